"""Dense univariate polynomials over the rationals, plus the few number-theoretic
helpers the subspace calculus needs (gcd, square-free part, rational roots,
a sound irreducibility certificate)."""
import enum
import math
from itertools import product

from ._backend import Q, ZERO, ONE, to_q
from .errors import PreconditionError

NEG_INF = float("-inf")


def _trim(c):
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


class Poly:
    """Immutable polynomial in ``t``; ``coeffs[i]`` is the coefficient of t^i."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=()):
        self.coeffs = _trim([to_q(c) for c in coeffs])
        self._hash = None

    @classmethod
    def _raw(cls, coeffs):
        # coeffs already trimmed and of scalar type
        p = object.__new__(cls)
        p.coeffs = coeffs
        p._hash = None
        return p

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def monomial(cls, k, c=1):
        return cls([0] * k + [c])

    @classmethod
    def t(cls):
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots):
        """prod (t - lam)^r over ``(lam, r)`` pairs."""
        out = cls.const(1)
        for lam, r in roots:
            out = out * cls((-to_q(lam), 1)) ** r
        return out

    # -- basic queries -------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else ZERO

    def is_zero(self):
        return not self.coeffs

    def is_const(self):
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, type(ONE))):
            return self.coeffs == _trim([to_q(other)])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple((c.numerator, c.denominator) for c in self.coeffs))
        return self._hash

    # -- arithmetic ----------------------------------------------------
    @staticmethod
    def _coerce(x):
        if isinstance(x, Poly):
            return x
        try:
            return Poly.const(x)
        except TypeError:
            return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        c = list(a)
        for i, x in enumerate(b):
            c[i] += x
        return Poly._raw(_trim(c))

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                s = to_q(other)
            except TypeError:
                return NotImplemented
            if not s:
                return Poly._raw(())
            return Poly._raw(tuple(c * s for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw(())
        c = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        c[i + j] += x * y
        return Poly._raw(_trim(c))

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out, base = Poly.const(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divrem(self, other):
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("zero divisor")
        b = other.coeffs
        db = len(b) - 1
        r = list(self.coeffs)
        if len(r) - 1 < db:
            return Poly._raw(()), self
        inv = 1 / b[-1]
        qc = [ZERO] * (len(r) - db)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if c:
                c = c * inv
                qc[k - db] = c
                for i in range(db + 1):
                    if b[i]:
                        r[k - db + i] -= c * b[i]
        return Poly._raw(_trim(qc)), Poly._raw(_trim(r[:db]))

    def __divmod__(self, other):
        return self.divrem(other)

    def __floordiv__(self, other):
        return self.divrem(other)[0]

    def __mod__(self, other):
        return self.divrem(other)[1]

    def divides(self, other):
        """True when self | other."""
        return not (other % self)

    def exact_div(self, other):
        q, r = self.divrem(other)
        if r:
            raise PreconditionError(f"{other} does not divide {self}")
        return q

    def __call__(self, x):
        x = to_q(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    eval = __call__

    def derivative(self):
        return Poly._raw(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def monic(self):
        if not self.coeffs:
            return self
        inv = 1 / self.coeffs[-1]
        return Poly._raw(tuple(c * inv for c in self.coeffs))

    def shift(self, k):
        """Multiply by t^k."""
        if not self.coeffs:
            return self
        return Poly._raw((ZERO,) * k + self.coeffs)

    def dense(self, n):
        """Coefficient list padded to length n (index = power)."""
        c = list(self.coeffs)
        if len(c) > n:
            raise ValueError(f"degree {self.degree} does not fit in {n} slots")
        return c + [ZERO] * (n - len(c))

    # -- printing ------------------------------------------------------
    def __str__(self):
        return format_terms([(c, _tpow(k)) for k, c in reversed(list(enumerate(self.coeffs))) if c])

    def __repr__(self):
        return f"Poly({self})"


def _tpow(k):
    return "" if k == 0 else ("t" if k == 1 else f"t^{k}")


def format_scalar(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_terms(terms):
    """Render ``[(coeff, monomial_text), ...]`` with explicit signs."""
    if not terms:
        return "0"
    parts = []
    for idx, (c, mono) in enumerate(terms):
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{format_scalar(a)}*{mono}"
        else:
            body = format_scalar(a)
        if idx == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


# ---------------------------------------------------------------------------
# gcd and friends


def gcd_monic(a, b):
    if not a and not b:
        raise PreconditionError("gcd of two zero polynomials")
    while b:
        a, b = b, a % b
    return a.monic()


def egcd(a, b):
    """Return ``(g, u, v)`` with g monic and g = u*a + v*b."""
    if not a and not b:
        raise PreconditionError("gcd of two zero polynomials")
    r0, r1 = a, b
    u0, u1 = Poly.const(1), Poly()
    v0, v1 = Poly(), Poly.const(1)
    while r1:
        q, r = r0.divrem(r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    inv = 1 / r0.lc
    return r0 * inv, u0 * inv, v0 * inv


def lcm_monic(a, b):
    if not a or not b:
        raise PreconditionError("lcm with the zero polynomial")
    return (a * b // gcd_monic(a, b)).monic()


def derivative(a):
    return a.derivative()


def squarefree_part(b):
    if not b:
        raise PreconditionError("square-free part of 0")
    if b.is_const():
        return Poly.const(1)
    return (b // gcd_monic(b, b.derivative())).monic()


def integer_primitive(b):
    """Integer coefficients (low to high) of the primitive associate of ``b``."""
    den = 1
    for c in b.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in b.coeffs]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    ints = [x // g for x in ints]
    if ints[-1] < 0:
        ints = [-x for x in ints]
    return ints


def _divisors(n):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(b):
    """Distinct rational roots of ``b``, ordered by |root| then positive first."""
    if not b:
        raise PreconditionError("roots of the zero polynomial")
    roots = []
    if b.degree >= 1 and not b[0]:
        roots.append(ZERO)
    k = 0
    while not b[k]:
        k += 1
    core = Poly._raw(b.coeffs[k:])
    if core.degree < 1:
        return roots
    ints = integer_primitive(core)
    cands = set()
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            cands.add(Q(p, q))
    for c in sorted(cands):
        for lam in (c, -c):
            if not core(lam):
                roots.append(lam)
    return roots


def rational_linear_split(b):
    """Split off rational linear factors.

    Returns ``(factors, remainder)`` where ``factors`` is a list of
    ``(lambda, multiplicity)`` and ``b = lc(b) * prod (t - lambda)^r * remainder``
    with ``remainder`` monic and free of rational roots.
    """
    rem = b.monic()
    factors = []
    for lam in rational_roots(b):
        lin = Poly((-lam, 1))
        r = 0
        while True:
            q, rr = rem.divrem(lin)
            if rr:
                break
            rem, r = q, r + 1
        factors.append((lam, r))
    return factors, rem


class Certificate(enum.Enum):
    PROVEN = "proven"
    UNKNOWN = "unknown"


def _small_primes(limit):
    return [p for p in range(2, limit) if all(p % d for d in range(2, int(p ** 0.5) + 1))]


def _fp_rem(a, b, p):
    # a, b: int coefficient lists (low to high) mod p, b monic
    a = a[:]
    db = len(b) - 1
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] % p
        if c:
            for i in range(db + 1):
                a[k - db + i] = (a[k - db + i] - c * b[i]) % p
    return [x % p for x in a[:db]]


def irreducible_mod_p(ints, p):
    """Exhaustive search for a monic factor of degree <= d/2 over F_p."""
    d = len(ints) - 1
    inv = pow(ints[-1], -1, p)
    f = [(x * inv) % p for x in ints]
    for k in range(1, d // 2 + 1):
        for tail in product(range(p), repeat=k):
            g = list(tail) + [1]
            if not any(_fp_rem(f, g, p)):
                return False
    return True


def irreducibility_certificate(q, search_budget=20000, prime_limit=60):
    """Sound but incomplete irreducibility test over the rationals.

    PROVEN is returned only for degree 1, for degree 2 or 3 without rational
    roots, or when the primitive integer associate stays irreducible modulo a
    prime not dividing its leading coefficient.
    """
    if q.degree < 1:
        raise PreconditionError("irreducibility of a constant")
    d = q.degree
    if d == 1:
        return Certificate.PROVEN
    if rational_roots(q):
        return Certificate.UNKNOWN
    if d <= 3:
        return Certificate.PROVEN
    ints = integer_primitive(q)
    for p in _small_primes(prime_limit):
        if ints[-1] % p == 0:
            continue
        if p ** (d // 2) > search_budget:
            break
        if irreducible_mod_p(ints, p):
            return Certificate.PROVEN
    return Certificate.UNKNOWN


class RatFunc:
    """Reduced quotient num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, Poly) else Poly.const(num)
        den = Poly.const(1) if den is None else (den if isinstance(den, Poly) else Poly.const(den))
        if not den:
            raise ZeroDivisionError("zero divisor")
        if num:
            g = gcd_monic(num, den)
            num, den = num // g, den // g
        else:
            den = Poly.const(1)
        lc = den.lc
        self.num = num * (1 / lc)
        self.den = den * (1 / lc)

    def is_poly(self):
        return self.den.is_const()

    def __eq__(self, other):
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.is_poly():
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__
