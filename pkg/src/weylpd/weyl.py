"""Normal-ordered arithmetic in the first Weyl algebra k[t, D] with D t - t D = 1.

Elements are stored as ``{(i, j): c}`` meaning sum c * t^i * D^j with every
``t`` to the left of every ``D``.
"""
from math import comb

from ._backend import ZERO, to_q
from .errors import PreconditionError
from .poly import NEG_INF, Poly, format_terms


def falling(n, k):
    """n (n-1) ... (n-k+1); zero when 0 <= n < k."""
    out = 1
    for i in range(k):
        out *= n - i
    return out


class WeylOp:
    __slots__ = ("terms", "_hash", "_coeffs")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ValueError("negative exponent")
                c = to_q(c)
                if c:
                    clean[(i, j)] = c
        self.terms = clean
        self._hash = None
        self._coeffs = None

    @classmethod
    def _raw(cls, terms):
        op = object.__new__(cls)
        op.terms = terms
        op._hash = None
        op._coeffs = None
        return op

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def t(cls):
        return cls({(1, 0): 1})

    @classmethod
    def D(cls):
        return cls({(0, 1): 1})

    @classmethod
    def monomial(cls, i, j, c=1):
        return cls({(i, j): c})

    @classmethod
    def from_poly(cls, p):
        return cls._raw({(i, 0): c for i, c in enumerate(p.coeffs) if c})

    @classmethod
    def from_coeffs(cls, polys):
        """Inverse of :meth:`coeffs`: ``polys[j]`` multiplies D^j on the right."""
        terms = {}
        for j, a in enumerate(polys):
            for i, c in enumerate(a.coeffs):
                if c:
                    terms[(i, j)] = c
        return cls._raw(terms)

    # -- queries -------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def deg_t(self):
        return max((i for i, _ in self.terms), default=NEG_INF)

    @property
    def deg_d(self):
        return max((j for _, j in self.terms), default=NEG_INF)

    def coeffs(self):
        """The t-coefficients ``(a_0, ..., a_p)`` with self = sum a_j D^j."""
        if self._coeffs is None:
            p = self.deg_d
            if p == NEG_INF:
                self._coeffs = ()
            else:
                rows = [[ZERO] * (self.deg_t + 1) for _ in range(p + 1)]
                for (i, j), c in self.terms.items():
                    rows[j][i] = c
                self._coeffs = tuple(Poly(r) for r in rows)
        return self._coeffs

    def view(self):
        return DPolyView(self.coeffs())

    def is_poly(self):
        return all(j == 0 for _, j in self.terms)

    def as_poly(self):
        if not self.is_poly():
            raise PreconditionError(f"{self} is not a polynomial in t")
        return self.coeffs()[0] if self.terms else Poly()

    def __eq__(self, other):
        if isinstance(other, WeylOp):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset((k, (c.numerator, c.denominator)) for k, c in self.terms.items()))
        return self._hash

    # -- arithmetic ----------------------------------------------------
    @staticmethod
    def _coerce(x):
        if isinstance(x, WeylOp):
            return x
        if isinstance(x, Poly):
            return WeylOp.from_poly(x)
        return WeylOp.const(x)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, ZERO) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return WeylOp._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return WeylOp._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, s):
        s = to_q(s)
        if not s:
            return WeylOp._raw({})
        return WeylOp._raw({k: c * s for k, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, (WeylOp, Poly)):
            return self.scale(other)
        return weyl_mul(self, self._coerce(other))

    def __rmul__(self, other):
        if isinstance(other, Poly):
            return weyl_mul(WeylOp.from_poly(other), self)
        return self.scale(other)

    def __pow__(self, k):
        out = WeylOp.const(1)
        for _ in range(k):
            out = out * self
        return out

    def apply(self, p):
        return apply(self, p)

    def reduce_mod(self, q):
        """Reduce every t-coefficient modulo the polynomial q (i.e. modulo q*A1)."""
        return WeylOp.from_coeffs([a % q for a in self.coeffs()])

    # -- printing ------------------------------------------------------
    def to_str(self, unicode=False):
        dsym = "∂" if unicode else "D"
        items = sorted(self.terms.items(), key=lambda kv: (-kv[0][1], -kv[0][0]))
        rendered = []
        for (i, j), c in items:
            parts = []
            if i:
                parts.append("t" if i == 1 else f"t^{i}")
            if j:
                parts.append(dsym if j == 1 else f"{dsym}^{j}")
            rendered.append((c, "*".join(parts)))
        return format_terms(rendered)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"WeylOp({self})"


class DPolyView:
    """The operator written as a_p(t) D^p + ... + a_1(t) D + a_0(t)."""

    __slots__ = ("coeff_seq",)

    def __init__(self, coeff_seq):
        seq = list(coeff_seq)
        while seq and not seq[-1]:
            seq.pop()
        self.coeff_seq = tuple(seq)

    def to_op(self):
        return WeylOp.from_coeffs(self.coeff_seq)

    def __eq__(self, other):
        return isinstance(other, DPolyView) and self.coeff_seq == other.coeff_seq

    def __repr__(self):
        return f"DPolyView({[str(a) for a in self.coeff_seq]})"


def weyl_mul(d, e):
    """Product d*e in normal form.

    Uses D^b t^c = sum_l C(b, l) c^(l) t^(c-l) D^(b-l), with c^(l) falling.
    """
    out = {}
    get = out.get
    for (a, b), x in d.terms.items():
        for (c, dd), y in e.terms.items():
            xy = x * y
            for l in range(min(b, c) + 1):
                k = (a + c - l, b + dd - l)
                v = get(k, ZERO) + xy * (comb(b, l) * falling(c, l))
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
    return WeylOp._raw(out)


def commutator(d, e):
    return weyl_mul(d, e) - weyl_mul(e, d)


def apply(d, p):
    """d(p) = sum a_j * p^(j)."""
    out = Poly()
    deriv = p
    for j, a in enumerate(d.coeffs()):
        if j:
            deriv = deriv.derivative()
            if not deriv:
                break
        if a:
            out = out + a * deriv
    return out


def apply_monomial(d, n):
    """d(t^n) = sum a_j n^(j) t^(n-j), computed without forming derivatives."""
    out = {}
    for (i, j), c in d.terms.items():
        if j <= n:
            f = falling(n, j)
            if f:
                k = i + n - j
                out[k] = out.get(k, ZERO) + c * f
    if not out:
        return Poly()
    top = max(out)
    return Poly([out.get(k, ZERO) for k in range(top + 1)])


def sigma(h, d):
    """Image of d under the automorphism fixing t and sending D to D - h."""
    h = h if isinstance(h, Poly) else Poly.const(h)
    if not h:
        return d
    shifted = WeylOp.D() - WeylOp.from_poly(h)
    powers = [WeylOp.const(1)]
    out = WeylOp()
    for (i, j), c in d.terms.items():
        while len(powers) <= j:
            powers.append(powers[-1] * shifted)
        out = out + weyl_mul(WeylOp.monomial(i, 0, c), powers[j])
    return out


def in_left_principal(e, b):
    """True iff e lies in b*A1, i.e. every t-coefficient of e is divisible by b."""
    if not b:
        raise PreconditionError("b must be nonzero")
    return all(b.divides(a) for a in e.coeffs())


def principal_coset_member(d, b, h):
    """Decide (D + h) d in b*A1, the membership test for D(R, O(b, h))."""
    if not b:
        raise PreconditionError("b must be nonzero")
    h = h if isinstance(h, Poly) else Poly.const(h)
    e = weyl_mul(WeylOp.D() + WeylOp.from_poly(h), d)
    return in_left_principal(e, b)


def build_f(b):
    """The operator f = D^-1 b D^(m+1) in A1, m = deg b.

    Expanded as beta_0 D^m + sum_p beta_p (tD - 1)(tD - 2)...(tD - p) D^(m-p)
    where b = sum beta_p t^p.
    """
    if not b:
        raise PreconditionError("build_f needs b != 0")
    m = b.degree
    tD = WeylOp.monomial(1, 1)
    f = WeylOp.monomial(0, m, b[0])
    chain = WeylOp.const(1)
    for p in range(1, m + 1):
        chain = chain * (tD - p)
        if b[p]:
            f = f + (chain * WeylOp.monomial(0, m - p)).scale(b[p])
    return f
