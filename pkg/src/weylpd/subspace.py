"""Finite-codimension subspaces of k[t] that contain a nonzero ideal.

A :class:`Subspace` is ``span(basis) + modulus * R``. Basis residues have
degree below ``deg(modulus)`` and are kept in reduced echelon form with
leading-term pivots (pivot coefficient 1, pairwise distinct pivot degrees).
Subspaces without a nonzero conductor cannot be represented.
"""
from dataclasses import dataclass

from ._backend import ZERO, ONE
from .errors import PreconditionError, VerificationError
from .linalg import Echelon
from .poly import Poly, RatFunc, gcd_monic, lcm_monic, rational_linear_split

__all__ = [
    "Subspace", "StabilizerReport", "make", "R", "ideal", "membership", "equal",
    "include", "sum_", "intersect", "scale", "conductor", "canonicalize",
    "stabilizer", "O_space", "Oh_space", "verify_lemma2", "pd_combine",
    "verify_lemma6_6", "classical_decompose", "generated_ideal",
]


def _to_vec(p, n):
    """Reversed dense coefficients: column c holds the coefficient of t^(n-1-c)."""
    c = p.coeffs
    v = [ZERO] * n
    for i, x in enumerate(c):
        v[n - 1 - i] = x
    return v


def _from_vec(v):
    n = len(v)
    return Poly([v[n - 1 - i] for i in range(n)])


def powers_mod(q, count):
    """[t^m mod q for m < count] as reversed vectors of length deg q."""
    n = q.degree
    out = []
    cur = [ZERO] * n
    if n:
        cur[n - 1] = ONE
    qc = q.coeffs
    for _ in range(count):
        out.append(cur)
        # multiply by t: shift toward higher degree, i.e. toward column 0
        top = cur[0] if n else ZERO
        nxt = cur[1:] + [ZERO]
        if top:
            for i in range(n):
                # t^n = -sum_{i<n} q_i t^i
                if qc[i]:
                    nxt[n - 1 - i] -= top * qc[i]
        cur = nxt
    return out


class Subspace:
    __slots__ = ("modulus", "basis", "canonical", "_ech", "_free")

    def __init__(self, modulus, basis, canonical=False):
        # trusted constructor; use make() for arbitrary generators
        self.modulus = modulus
        self.basis = tuple(basis)
        self.canonical = canonical
        self._ech = None
        self._free = None

    # -- internal linear algebra ----------------------------------------
    @property
    def n(self):
        return self.modulus.degree

    @property
    def echelon(self):
        if self._ech is None:
            n = self.n
            self._ech = Echelon(n, [_to_vec(b, n) for b in self.basis])
            self._free = [c for c in range(n) if c not in self._ech.rows]
        return self._ech

    @property
    def free_columns(self):
        self.echelon
        return self._free

    @property
    def codim_in_ambient(self):
        """dim R/V computed against the stored modulus (exact only if canonical)."""
        return self.n - len(self.basis)

    @property
    def codim(self):
        return canonicalize(self).codim_in_ambient

    def quotient_coords(self, vec):
        """Coordinates of a reversed residue vector in (R/qR)/(V/qR)."""
        r = self.echelon.reduce(vec)
        return [r[c] for c in self._free]

    def residue_in(self, vec):
        return not any(self.quotient_coords(vec))

    def __contains__(self, p):
        return membership(self, p)

    def __eq__(self, other):
        return isinstance(other, Subspace) and equal(self, other)

    def __hash__(self):
        c = canonicalize(self)
        return hash((c.modulus, c.basis))

    def __and__(self, other):
        return intersect(self, other)

    def __add__(self, other):
        return sum_(self, other)

    def __str__(self):
        if self.modulus.degree == 0:
            return "R"
        if not self.basis:
            return f"ideal({self.modulus})"
        return "span{" + ", ".join(str(b) for b in self.basis) + f"}} + ideal({self.modulus})"

    def __repr__(self):
        return f"Subspace({self})"

    def to_dict(self):
        return {
            "basis": [str(b) for b in self.basis],
            "canonical": self.canonical,
            "modulus": str(self.modulus),
        }


@dataclass(frozen=True)
class StabilizerReport:
    algebra: Subspace
    is_unital_algebra: bool


# ---------------------------------------------------------------------------
# construction


def make(q, gens=(), canonical=False):
    """The subspace span(gens) + qR."""
    q = q if isinstance(q, Poly) else Poly.const(q)
    if not q:
        raise PreconditionError("modulus must be nonzero: zero-conductor subspaces are not representable")
    q = q.monic()
    n = q.degree
    ech = Echelon(n)
    for g in gens:
        g = g if isinstance(g, Poly) else Poly.const(g)
        ech.add(_to_vec(g % q, n))
    basis = [_from_vec(ech.rows[p]) for p in sorted(ech.rows, reverse=True)]
    V = Subspace(q, basis)
    V._ech = ech
    V._free = [c for c in range(n) if c not in ech.rows]
    return canonicalize(V) if canonical else V


def R():
    return Subspace(Poly.const(1), (), canonical=True)


def ideal(q):
    return make(q, (), canonical=True)


def membership(V, p):
    p = p if isinstance(p, Poly) else Poly.const(p)
    return V.residue_in(_to_vec(p % V.modulus, V.n))


def include(V, W):
    """V subset of W: conductor(W) | modulus(V) and every basis residue of V lies in W."""
    if not conductor(W).divides(V.modulus):
        return False
    return all(membership(W, b) for b in V.basis)


def equal(V, W):
    a, b = canonicalize(V), canonicalize(W)
    return a.modulus == b.modulus and a.basis == b.basis


def generated_ideal(V):
    """Monic generator of the ideal of R generated by V."""
    g = V.modulus
    for b in V.basis:
        g = gcd_monic(g, b)
    return g


def conductor(V):
    """Monic generator of the largest ideal of R contained in V."""
    q, n = V.modulus, V.n
    if not V.basis or n == 0:
        return q
    if V.canonical:
        return q
    P = powers_mod(q, 2 * n - 1)
    Pi = [V.quotient_coords(v) for v in P]
    c = len(V.free_columns)
    # unknown a = sum a_i t^i; condition: a * t^j in V for j < n
    ech = Echelon(n)
    for j in range(n):
        for k in range(c):
            ech.add([Pi[i + j][k] for i in range(n)])
            if ech.rank == n:
                break
        if ech.rank == n:
            break
    g = q
    for sol in ech.nullspace():
        g = gcd_monic(g, Poly(sol))
    return g


def canonicalize(V):
    if V.canonical:
        return V
    g = conductor(V)
    W = make(g, V.basis) if g != V.modulus else V
    out = Subspace(W.modulus, W.basis, canonical=True)
    out._ech, out._free = W._ech, W._free
    return out


# ---------------------------------------------------------------------------
# lattice operations


def _lift(V, L):
    """Generators of V as residues modulo a multiple L of its modulus."""
    q = V.modulus
    extra = L.degree - q.degree
    return list(V.basis) + [q.shift(k) for k in range(extra)]


def sum_(V, W):
    L = lcm_monic(V.modulus, W.modulus)
    return make(L, _lift(V, L) + _lift(W, L), canonical=True)


def intersect(V, W):
    L = lcm_monic(V.modulus, W.modulus)
    gens = _lift(V, L)
    n = L.degree
    # x with sum x_i g_i in W
    cols = [W.quotient_coords(_to_vec(g % W.modulus, W.n)) for g in gens]
    c = len(W.free_columns)
    ech = Echelon(len(gens))
    for k in range(c):
        ech.add([col[k] for col in cols])
    sols = []
    for x in ech.nullspace():
        acc = Poly()
        for xi, g in zip(x, gens):
            if xi:
                acc = acc + g * xi
        sols.append(acc)
    return make(L, sols, canonical=True) if n else R()


def scale(V, s):
    """The subspace s*V for a rational function s with s*V inside R."""
    if not isinstance(s, RatFunc):
        s = RatFunc(s)
    if not s.num:
        raise PreconditionError("scale by zero leaves the representable domain")
    den = s.den
    if not den.divides(V.modulus) or not all(den.divides(b) for b in V.basis):
        raise PreconditionError("scale leaves R")
    q = V.modulus // den * s.num
    gens = [b // den * s.num for b in V.basis]
    return make(q, gens, canonical=True)


# ---------------------------------------------------------------------------
# stabilizer and the model spaces O(b), O(b, h)


def stabilizer(V):
    """S(V) = {a : aV in V}, computed over the conductor modulus."""
    V = canonicalize(V)
    q, n = V.modulus, V.n
    if not V.basis:
        return StabilizerReport(R(), True)
    c = len(V.free_columns)
    ech = Echelon(n)
    for u in V.basis:
        # t^i * u mod q for i < n, as quotient coordinates
        cols = []
        cur = u
        for i in range(n):
            cols.append(V.quotient_coords(_to_vec(cur, n)))
            cur = cur.shift(1) % q
        for k in range(c):
            ech.add([cols[i][k] for i in range(n)])
        if ech.rank == n:
            break
    S = make(q, [Poly(x) for x in ech.nullspace()], canonical=True)
    unital = membership(S, ONE)
    if unital:
        for i, a in enumerate(S.basis):
            for b in S.basis[i:]:
                if not membership(S, a * b):
                    unital = False
                    break
            if not unital:
                break
    return StabilizerReport(S, unital)


def _solve_model_space(b, image):
    """Residues a (deg < 2 deg b) with image(t^i) summed linearly in bR, over modulus b^2."""
    if not b:
        raise PreconditionError("b must be nonzero")
    b = b.monic()
    m = b.degree
    if m == 0:
        return R()
    n = 2 * m
    imgs = [image(i) % b for i in range(n)]
    ech = Echelon(n)
    for k in range(m):
        ech.add([im[k] for im in imgs])
    sols = [Poly(x) for x in ech.nullspace()]
    return make(b * b, sols, canonical=True)


def O_space(b):
    """O(b) = {a : a' in bR}."""
    return _solve_model_space(b, lambda i: Poly.monomial(i).derivative())


def Oh_space(b, h):
    """O(b, h) = {a : a' + a h in bR}."""
    h = h if isinstance(h, Poly) else Poly.const(h)
    return _solve_model_space(b, lambda i: Poly.monomial(i).derivative() + Poly.monomial(i) * h)


# ---------------------------------------------------------------------------
# identity checks


def verify_lemma2(lams, rs, Vs):
    """O(prod (t-lam_i)^(r_i-1)) is inside S(cap V_i), and equals cap O((t-lam_i)^(r_i-1))."""
    if not (len(lams) == len(rs) == len(Vs)) or not lams:
        raise PreconditionError("need equally many lambdas, exponents and subspaces")
    if len(set(lams)) != len(lams):
        raise PreconditionError("lambdas must be distinct")
    for lam, r, V in zip(lams, rs, Vs):
        if r < 1:
            raise PreconditionError("exponents must be positive")
        if not include(ideal(Poly.from_roots([(lam, r)])), V):
            raise PreconditionError(f"V does not contain (t - {lam})^{r} R")
    W = Vs[0]
    for V in Vs[1:]:
        W = intersect(W, V)
    b = Poly.from_roots([(lam, r - 1) for lam, r in zip(lams, rs)])
    Ob = O_space(b)
    ok_inclusion = include(Ob, stabilizer(W).algebra)
    parts = O_space(Poly.from_roots([(lams[0], rs[0] - 1)]))
    for lam, r in zip(lams[1:], rs[1:]):
        parts = intersect(parts, O_space(Poly.from_roots([(lam, r - 1)])))
    return ok_inclusion and equal(Ob, parts)


def pd_combine(V, b1, W, b2):
    """Witness b1*b2 for V + W and V & W given witnesses b1 for V and b2 for W."""
    if not include(O_space(b1), stabilizer(V).algebra):
        raise VerificationError("first witness fails: O(b1) not inside S(V)", {"V": str(V), "b1": str(b1)})
    if not include(O_space(b2), stabilizer(W).algebra):
        raise VerificationError("second witness fails: O(b2) not inside S(W)", {"W": str(W), "b2": str(b2)})
    b = b1 * b2
    Ob = O_space(b)
    for label, X in (("sum", sum_(V, W)), ("intersection", intersect(V, W))):
        if not include(Ob, stabilizer(X).algebra):
            raise VerificationError(f"combined witness fails on the {label}",
                                    {"V": str(V), "W": str(W), "b": str(b)})
    return b


def verify_lemma6_6(a, h, q):
    """O(a, h) = q O(a) + C(R, O(a)) for q in O(a, h) coprime to a."""
    h = h if isinstance(h, Poly) else Poly.const(h)
    Oah = Oh_space(a, h)
    if not membership(Oah, q):
        raise PreconditionError("hypothesis failed: q is not in O(a, h)")
    if gcd_monic(q, a) != Poly.const(1):
        raise PreconditionError("hypothesis failed: hcf(q, a) != 1")
    Oa = O_space(a)
    rhs = sum_(scale(Oa, q), ideal(conductor(Oa)))
    return equal(rhs, Oah)


def classical_decompose(V, b):
    """Split V into components V + (t - lam_i)^(r_i + 1) R for a split witness b."""
    V = canonicalize(V)
    if not include(O_space(b), stabilizer(V).algebra):
        raise PreconditionError("witness check failed: O(b) is not inside S(V)")
    factors, rem = rational_linear_split(b)
    if rem.degree > 0:
        raise PreconditionError("witness does not split over Q")
    if generated_ideal(V) != Poly.const(1):
        raise PreconditionError("V is contained in a proper ideal of R")
    if not factors:
        return [V]
    comps = [sum_(V, ideal(Poly.from_roots([(lam, r + 1)]))) for lam, r in factors]
    W = comps[0]
    for C in comps[1:]:
        W = intersect(W, C)
    if not equal(W, V):
        raise VerificationError("components do not intersect back to V", {"V": str(V), "b": str(b)})
    return comps
