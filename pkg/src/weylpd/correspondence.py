"""The maps V -> D(R, V) and I -> I*1 between subspaces of k[t] and right ideals
of A1, together with the primary-decomposability decision procedure.

Right ideals are handled through finite generator lists and truncations: the
slice of operators of D-degree <= p, reduced modulo q*A1 for a polynomial q in
the ideal. Every equality of ideals reported here is an equality of such
truncations.
"""
import random
from dataclasses import dataclass, field
from functools import lru_cache

from ._backend import ZERO, ONE
from .errors import PreconditionError, VerificationError
from .linalg import Echelon
from .poly import Certificate, Poly, gcd_monic, irreducibility_certificate, squarefree_part
from .subspace import (Subspace, _to_vec, canonicalize, equal, include, make, membership,
                       O_space, powers_mod, stabilizer)
from .weyl import WeylOp, apply_monomial, build_f, commutator, falling, in_left_principal


@dataclass(frozen=True)
class Caps:
    p_max: int = 6
    t_max: int = 8
    window: int = 3
    r_max: int = 6
    slack: int = 0

    def __post_init__(self):
        if min(self.p_max, self.t_max, self.window, self.r_max) < 1 or self.slack < 0:
            raise PreconditionError("caps must be positive")
        if self.window < 2:
            raise PreconditionError("window must be at least 2")

    def to_dict(self):
        return {"p_max": self.p_max, "r_max": self.r_max, "slack": self.slack,
                "t_max": self.t_max, "window": self.window}


DEFAULT_CAPS = Caps()


def membership_bound(p, n):
    """Indices 0..N(p) decide d(t^k) in V for all k, when deg_D d = p and deg q = n."""
    return (p + 1) * n + p


@dataclass
class IdealPresentation:
    generators: tuple
    poly_member: Poly = None
    member_verified: bool = False

    def __post_init__(self):
        self.generators = tuple(g if isinstance(g, WeylOp) else WeylOp._coerce(g) for g in self.generators)
        if not self.generators or any(not g for g in self.generators):
            raise PreconditionError("an ideal presentation needs nonzero generators")
        if self.poly_member is None:
            polys = [g.as_poly() for g in self.generators if g.is_poly()]
            if polys:
                m = polys[0]
                for p in polys[1:]:
                    m = gcd_monic(m, p)
                self.poly_member = m.monic()
                self.member_verified = True
        elif self.poly_member:
            self.poly_member = self.poly_member.monic()
        else:
            raise PreconditionError("poly_member must be nonzero")

    def with_member(self, q):
        return IdealPresentation(self.generators, q, True)

    def __str__(self):
        return "ideal[" + "; ".join(str(g) for g in self.generators) + "]"


# ---------------------------------------------------------------------------
# D(R, V): membership and truncations


def _powers_quotient(V, count):
    """Quotient coordinates (modulo V) of t^m for m < count."""
    return [V.quotient_coords(v) for v in powers_mod(V.modulus, count)]


def in_DRV(d, V, slack=0):
    """Decide d(R) in V via d(t^k) in V for k <= N(deg_D d) + slack."""
    V = canonicalize(V)
    q, n = V.modulus, V.n
    if not d or n == 0:
        return True
    d = d.reduce_mod(q)
    if not d:
        return True
    p = d.deg_d
    N = membership_bound(p, n) + slack
    P = powers_mod(q, n + N + 1)
    terms = list(d.terms.items())
    for k in range(N + 1):
        vec = [ZERO] * n
        for (i, j), c in terms:
            f = falling(k, j)
            if f:
                src = P[i + k - j]
                cf = c * f
                for col, x in enumerate(src):
                    if x:
                        vec[col] += cf * x
        if not V.residue_in(vec):
            return False
    return True


def _vec_to_op(x, n):
    terms = {}
    for idx, c in enumerate(x):
        if c:
            terms[(idx % n, idx // n)] = c
    return WeylOp._raw(terms)


@lru_cache(maxsize=256)
def _drv_truncation_cached(modulus, basis, p, q, slack):
    V = Subspace(modulus, basis, canonical=False)
    n = q.degree
    if n == 0:
        return ()
    N = membership_bound(p, n) + slack
    Pi = _powers_quotient(V, n + N + 1)
    c = len(V.free_columns)
    width = (p + 1) * n
    ech = Echelon(width)
    if c:
        for k in range(N + 1):
            for coord in range(c):
                row = [ZERO] * width
                for j in range(min(p, k) + 1):
                    f = falling(k, j)
                    base = j * n
                    for i in range(n):
                        row[base + i] = f * Pi[i + k - j][coord]
                ech.add(row)
            if ech.rank == width:
                break
    return tuple(_vec_to_op(x, n) for x in ech.nullspace())


def drv_truncation(V, p, modulus=None, slack=0):
    """Basis of {d in D(R, V) : deg_D d <= p} modulo q*A1.

    ``q`` defaults to the conductor of V; any multiple ``modulus`` of it works.
    Coefficients are residues mod q. The basis is echelon with respect to the
    top (D-degree, t-degree) of each element, so the elements of D-degree
    <= p' < p form a basis of the smaller truncation.
    """
    V = canonicalize(V)
    q = V.modulus if modulus is None else modulus.monic()
    if not V.modulus.divides(q):
        raise PreconditionError("the truncation modulus must be a multiple of the conductor")
    return list(_drv_truncation_cached(V.modulus, V.basis, p, q, slack))


def top_degree(d):
    """(deg_D, deg_t of the top D-coefficient) of a nonzero operator."""
    j = d.deg_d
    return j, max(i for (i, jj) in d.terms if jj == j)


# ---------------------------------------------------------------------------
# right-ideal truncations from generators


class IdealTruncation:
    """Span of g * t^i * D^j modulo q*A1 with D-degree <= P_hi.

    Columns are ordered by decreasing D-degree so that echelon rows whose
    pivot lies in the block of degree <= p span the part of D-degree <= p.
    """

    def __init__(self, q, P_hi):
        self.q = q.monic()
        self.n = self.q.degree
        self.P_hi = P_hi
        self.ech = Echelon((P_hi + 1) * self.n)

    def _col(self, j, k):
        return (self.P_hi - j) * self.n + k

    def vec(self, d):
        v = [ZERO] * ((self.P_hi + 1) * self.n)
        for (i, j), c in d.terms.items():
            v[self._col(j, i)] = c
        return v

    def _times_t(self, d):
        # (a D^j) t = a t D^j + j a D^(j-1)
        out = WeylOp()
        for (i, j), c in d.terms.items():
            out = out + WeylOp._raw({(i + 1, j): c})
            if j:
                out = out + WeylOp._raw({(i, j - 1): c * j})
        return out.reduce_mod(self.q)

    def add_generator(self, g):
        if self.n == 0:
            return
        g = g.reduce_mod(self.q)
        if not g or g.deg_d > self.P_hi:
            return
        dg = g.deg_d
        krylov = Echelon((self.P_hi + 1) * self.n)
        u = g
        while u and krylov.add(self.vec(u)):
            for s in range(self.P_hi - dg + 1):
                shifted = WeylOp._raw({(i, j + s): c for (i, j), c in u.terms.items()})
                self.ech.add(self.vec(shifted))
            u = self._times_t(u)

    def dim(self, p):
        """Dimension of the part of D-degree <= p."""
        lo = (self.P_hi - p) * self.n
        return sum(1 for piv in self.ech.rows if piv >= lo)

    def contains(self, d):
        d = d.reduce_mod(self.q)
        if d and d.deg_d > self.P_hi:
            return False
        return self.ech.contains(self.vec(d))


def ideal_truncation(gens, q, P, extra=1):
    trunc = IdealTruncation(q, P + extra)
    for g in gens:
        trunc.add_generator(g)
    return trunc


def _compare_truncations(gens, V, q, p_max, extra=1):
    """Per-degree dimensions of the generated truncation and of D(R, V)."""
    trunc = ideal_truncation(gens, q, p_max, extra)
    basis = drv_truncation(V, p_max, modulus=q)
    rows = []
    for p in range(p_max + 1):
        d_dim = sum(1 for d in basis if d.deg_d <= p)
        rows.append({"p": p, "ideal_dim": trunc.dim(p), "drv_dim": d_dim})
    missing = [d for d in basis if not trunc.contains(d)]
    return rows, missing, trunc


# ---------------------------------------------------------------------------
# I*1 and polynomial members


def star1(I, caps=DEFAULT_CAPS):
    """I*1 = sum g_i(R) + q0 R for a known polynomial member q0 of I."""
    q0 = I.poly_member
    if q0 is None:
        raise PreconditionError("no polynomial member known")
    n = q0.degree
    images = []
    for g in I.generators:
        g = g.reduce_mod(q0)
        if not g:
            continue
        p = g.deg_d
        N = membership_bound(p, n) + caps.slack
        for k in range(N + 1):
            images.append(apply_monomial(g, k) % q0)
    return make(q0, images, canonical=True)


def _depth_schedule(caps):
    levels = [(0, 0)]
    d = 1
    while True:
        T, P = min(d, caps.t_max), min(d, caps.p_max)
        if (T, P) != levels[-1]:
            levels.append((T, P))
        if T == caps.t_max and P == caps.p_max:
            return levels
        d *= 2


def find_poly_in_ideal(I, caps=DEFAULT_CAPS):
    """Search sum g_i h_i of D-degree 0 with h_i of bounded degrees.

    Iterative deepening over (deg_t, deg_D) of the h_i, doubling each round.
    Returns the monic gcd of the polynomials found at the first successful
    depth, or None when the caps are exhausted.
    """
    for T, P in _depth_schedule(caps):
        prods = []
        for g in I.generators:
            for a in range(T + 1):
                left = g * WeylOp.monomial(a, 0)
                for b in range(P + 1):
                    prods.append(left * WeylOp.monomial(0, b))
        keys = sorted({k for pr in prods for k in pr.terms if k[1] >= 1})
        ech = Echelon(len(prods))
        for k in keys:
            row = [pr.terms.get(k, ZERO) for pr in prods]
            if any(row):
                ech.add(row)
        found = None
        for x in ech.nullspace():
            acc = WeylOp()
            for xi, pr in zip(x, prods):
                if xi:
                    acc = acc + pr.scale(xi)
            if acc:
                poly = acc.as_poly()
                found = poly.monic() if found is None else gcd_monic(found, poly)
        if found is not None:
            return found
    return None


# ---------------------------------------------------------------------------
# primary decomposability


@dataclass(frozen=True)
class PD:
    r: int
    b: Poly
    realizers: tuple = ()
    route: str = "witness-search"

    def to_dict(self):
        return {"realizers": [str(f) for f in self.realizers], "r": self.r,
                "route": self.route, "verdict": "pd", "witness": str(self.b)}


@dataclass(frozen=True)
class NotPD:
    rule: str
    q: Poly

    def to_dict(self):
        return {"certificate": "proven-irreducible", "q": str(self.q), "rule": self.rule,
                "verdict": "not-pd"}


@dataclass(frozen=True)
class Inconclusive:
    caps: Caps
    last_star1: Subspace
    stabilized: bool = False

    def to_dict(self):
        return {"caps": self.caps.to_dict(), "last_star1": self.last_star1.to_dict(),
                "stabilized": self.stabilized, "verdict": "inconclusive"}


def _model_space_samples(b, count=6, seed=0):
    """Deterministic elements of O(b): basis, modulus multiples, random mixes."""
    Ob = O_space(b)
    rng = random.Random(seed)
    out = list(Ob.basis) + [Ob.modulus, Ob.modulus.shift(1)]
    for _ in range(count):
        s = Ob.modulus * Poly([rng.randint(-3, 3) for _ in range(3)])
        for u in Ob.basis:
            s = s + u * rng.randint(-3, 3)
        out.append(s)
    return [s for s in out if s]


def _choose_realizers(V, basis):
    """Greedy pick, in (deg_D, deg_t) order, of operators whose values at 1
    span V modulo its conductor."""
    n = V.n
    target = len(V.basis)
    span = Echelon(n)
    chosen = []
    for d in sorted(basis, key=top_degree):
        a0 = d.coeffs()[0] if d.coeffs() else Poly()
        if span.add(_to_vec(a0 % V.modulus, n)):
            chosen.append(d)
            if span.rank == target:
                break
    return chosen


def theorem8_route(V, caps=DEFAULT_CAPS):
    """Look for p with span{d(1) : d in D(R,V), deg_D d <= p} + qR = V.

    Returns ``(PD or None, history)`` where history lists the E_p subspaces.
    """
    V = canonicalize(V)
    q = V.modulus
    history = []
    for p in range(caps.p_max + 1):
        basis = drv_truncation(V, p, slack=caps.slack)
        E = make(q, [d.coeffs()[0] for d in basis if d.coeffs()], canonical=False)
        history.append(E)
        if equal(E, V):
            realizers = tuple(_choose_realizers(V, basis))
            r = max((f.deg_d for f in realizers), default=0)
            b = q ** r
            if not include(O_space(b), stabilizer(V).algebra):
                raise VerificationError("realizer witness failed: O(q^r) not inside S(V)",
                                        {"V": str(V), "r": r})
            for f in realizers:
                for s in _model_space_samples(q ** f.deg_d if f.deg_d else Poly.const(1)):
                    if not in_left_principal(commutator(f, WeylOp.from_poly(s)), q):
                        raise VerificationError("commutator [f, s] not in qA1",
                                                {"V": str(V), "f": str(f), "s": str(s)})
            return PD(r, b, realizers, "theorem8"), history
    return None, history


def pd_decide(V, caps=DEFAULT_CAPS, route="auto"):
    """Three-valued decision: PD, NotPD (irreducible-conductor rule) or Inconclusive."""
    V = canonicalize(V)
    q = V.modulus
    if q.degree == 0:
        return PD(0, Poly.const(1), (WeylOp.const(1),), "trivial")
    if route == "auto":
        S = stabilizer(V).algebra
        for r in range(1, caps.r_max + 1):
            b = q ** r
            if include(O_space(b), S):
                return PD(r, b, (), "witness-search")
    elif route != "theorem8":
        raise PreconditionError(f"unknown route {route!r}")
    if (q.degree >= 2 and V.basis == (Poly.const(1),)
            and irreducibility_certificate(q) is Certificate.PROVEN):
        return NotPD("lemma10", q)
    verdict, history = theorem8_route(V, caps)
    if verdict is not None:
        return verdict
    w = caps.window
    stable = len(history) >= w and all(equal(h, history[-1]) for h in history[-w:])
    return Inconclusive(caps, canonicalize(history[-1]), stable)


# ---------------------------------------------------------------------------
# Gamma and round trips


@dataclass
class GammaReport:
    witness: Poly
    r: int
    enlarged: bool
    added: list = field(default_factory=list)
    dims: list = field(default_factory=list)

    def to_dict(self):
        return {"added": [str(d) for d in self.added], "dims": self.dims,
                "enlarged": self.enlarged, "r": self.r, "witness": str(self.witness)}


def _smallest_witness(V, b):
    """Prefer a low-degree witness: powers of the square-free part of q before b."""
    rad = squarefree_part(V.modulus)
    S = stabilizer(V).algebra
    c = rad
    while c.degree < b.degree:
        if include(O_space(c), S):
            return c
        c = c * rad
    return b


def gamma(V, caps=DEFAULT_CAPS, verdict=None):
    """A generator presentation of D(R, V), checked against its truncations."""
    V = canonicalize(V)
    verdict = pd_decide(V, caps) if verdict is None else verdict
    if not isinstance(verdict, PD):
        raise PreconditionError("gamma needs a verified primary decomposable subspace")
    q = V.modulus
    if q.degree == 0:
        return IdealPresentation((WeylOp.const(1),), Poly.const(1), True), \
            GammaReport(verdict.b, verdict.r, False)
    if not V.basis:
        gens = [WeylOp.from_poly(q)]
    else:
        b = _smallest_witness(V, verdict.b)
        fb = build_f(b)
        bb = WeylOp.from_poly(b * b)
        gens = []
        for w in list(V.basis) + [q]:
            W = WeylOp.from_poly(w)
            gens += [W * fb, W * bb]
        gens += [WeylOp.from_poly(q) * WeylOp.monomial(i, j) for i in range(2) for j in range(2)]
    seen, uniq = set(), []
    for g in gens:
        if g and g not in seen:
            seen.add(g)
            uniq.append(g)
    gens = uniq
    for g in gens:
        if not in_DRV(g, V, caps.slack):
            raise VerificationError("gamma generator outside D(R, V)", {"V": str(V), "g": str(g)})
    rows, missing, _ = _compare_truncations(gens, V, q, caps.p_max)
    added = []
    if missing:
        added = list(missing)
        gens = gens + added
        rows, missing, _ = _compare_truncations(gens, V, q, caps.p_max)
        if missing:
            raise VerificationError("truncation repair failed", {"V": str(V)})
    if any(r["ideal_dim"] != r["drv_dim"] for r in rows):
        raise VerificationError("truncation dimensions disagree", {"V": str(V), "dims": rows})
    witness = verdict.b if not V.basis else b
    report = GammaReport(witness, verdict.r, bool(added), added, rows)
    return IdealPresentation(tuple(gens), q, True), report


def roundtrip_gamma_inv_gamma(V, caps=DEFAULT_CAPS):
    """Check star1(gamma(V)) == V."""
    I, rep = gamma(V, caps)
    Vp = star1(I, caps)
    return {"ideal": I, "gamma": rep, "star1": Vp, "ok": equal(Vp, V)}


def roundtrip_gamma_gamma_inv(I, caps=DEFAULT_CAPS):
    """Check I against D(R, I*1): generators inside, truncations equal for p <= p_max."""
    if I.poly_member is None:
        raise PreconditionError("no polynomial member known")
    Vp = star1(I, caps)
    q0 = I.poly_member
    gens_ok = all(in_DRV(g, Vp, caps.slack) for g in I.generators)
    rows, missing, _ = _compare_truncations(I.generators, Vp, q0, caps.p_max)
    trunc_ok = not missing and all(r["ideal_dim"] == r["drv_dim"] for r in rows)
    return {"generators_in_DRV": gens_ok, "star1": Vp, "truncations": rows,
            "truncations_agree": trunc_ok, "ok": gens_ok and trunc_ok}


def verify_prop7_image(b):
    """f(R) = O(b) for f = build_f(b), checked at the finite-criterion level."""
    if not b:
        raise PreconditionError("b must be nonzero")
    m = b.degree
    f = build_f(b)
    Ob = O_space(b)
    if m == 0:
        return equal(Ob, make(1)) and f == WeylOp.from_poly(b)
    if Ob.codim != m:
        return False
    N = membership_bound(m, Ob.n)
    imgs = [apply_monomial(f, k) for k in range(N + 1)]
    if not all(membership(Ob, im) for im in imgs):
        return False
    if not imgs[0] or imgs[0].degree != 0:
        return False
    if any(imgs[j].degree != j for j in range(m + 1, N + 1)):
        return False
    bb = (b * b).monic()
    span = Echelon(bb.degree, [_to_vec(im % bb, bb.degree) for im in imgs])
    return span.rank == bb.degree - m
