from fractions import Fraction
from itertools import product

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from strategies import nonzero_polys, polys, rationals, small_lambdas
from weylpd.errors import PreconditionError
from weylpd.poly import (NEG_INF, Certificate, Poly, RatFunc, derivative, egcd, gcd_monic,
                         irreducibility_certificate, lcm_monic, rational_linear_split, rational_roots,
                         squarefree_part)

t = Poly.t()


def P(*coeffs):
    return Poly([Fraction(c) for c in coeffs])


class TestBasics:
    def test_zero_has_no_degree(self):
        assert Poly().degree == NEG_INF
        assert Poly([0, 0]).degree == NEG_INF
        assert Poly([1, 0, 0]).coeffs == (1,)

    def test_divrem_example(self):
        q, r = (t ** 3).divrem(t ** 2 + 1)
        assert (q, r) == (t, -t)

    def test_zero_times_anything(self):
        assert Poly() * t ** 5 == Poly()

    def test_eval(self):
        assert (t ** 2 - 2)(3) == 7

    def test_divide_by_zero(self):
        with pytest.raises(ZeroDivisionError, match="zero divisor"):
            t.divrem(Poly())

    def test_printing(self):
        assert str(t ** 3 - 2 * t + Fraction(1, 2)) == "t^3 - 2*t + 1/2"
        assert str(-t) == "-t"
        assert str(Poly()) == "0"
        assert str(Fraction(-3, 4) * t ** 2 + 1) == "-3/4*t^2 + 1"

    def test_from_roots(self):
        assert Poly.from_roots([(0, 2), (1, 1)]) == t ** 3 - t ** 2


class TestGcd:
    def test_egcd_examples(self):
        assert egcd(t, t ** 2 + 1) == (P(1), -t, P(1))
        g, u, v = egcd(1 - t, t ** 2)
        assert (g, u, v) == (P(1), 1 + t, P(1))

    def test_gcd_divisor_case(self):
        assert gcd_monic(t ** 2, t ** 3) == t ** 2

    def test_both_zero(self):
        with pytest.raises(PreconditionError):
            egcd(Poly(), Poly())
        with pytest.raises(PreconditionError):
            gcd_monic(Poly(), Poly())

    @given(polys(), polys())
    def test_bezout_identity(self, a, b):
        assume(a or b)
        g, u, v = egcd(a, b)
        assert u * a + v * b == g
        assert g.lc == 1
        assert g.divides(a) and g.divides(b)

    @given(nonzero_polys(3), nonzero_polys(3), nonzero_polys(2))
    def test_gcd_recovers_common_factor(self, a, b, c):
        g = gcd_monic(a * c, b * c)
        assert c.monic().divides(g)

    @given(nonzero_polys(3), nonzero_polys(3))
    def test_lcm(self, a, b):
        m = lcm_monic(a, b)
        assert a.divides(m) and b.divides(m)
        assert m * gcd_monic(a, b) == (a * b).monic()


class TestDerivative:
    def test_examples(self):
        assert derivative(t ** 3 + 2 * t) == 3 * t ** 2 + 2
        assert derivative(P(7)) == Poly()
        assert derivative(t ** 2 * (t - 1) ** 2) == 2 * t * (t - 1) * (2 * t - 1)

    @given(polys(), polys(), rationals)
    def test_linear_and_leibniz(self, a, b, c):
        assert derivative(a * c + b) == derivative(a) * c + derivative(b)
        assert derivative(a * b) == derivative(a) * b + a * derivative(b)


class TestSquarefreeAndSplit:
    def test_squarefree_examples(self):
        assert squarefree_part(t ** 2 * (t - 1) ** 3) == t * (t - 1)
        assert squarefree_part(t ** 2 + 1) == t ** 2 + 1
        assert squarefree_part(Fraction(-5, 3) * t ** 2) == t

    def test_squarefree_of_zero(self):
        with pytest.raises(PreconditionError):
            squarefree_part(Poly())

    @given(nonzero_polys(5, 1))
    def test_squarefree_is_coprime_to_derivative(self, b):
        s = squarefree_part(b)
        assert s.divides(b)
        assert gcd_monic(s, derivative(s)) == P(1)

    def test_split_examples(self):
        assert rational_linear_split(t ** 2 * (t - 1)) == ([(0, 2), (1, 1)], P(1))
        assert rational_linear_split(t ** 2 + 1) == ([], t ** 2 + 1)
        assert rational_linear_split(2 * t ** 2 - 2) == ([(1, 1), (-1, 1)], P(1))

    @given(st.lists(st.tuples(small_lambdas, st.integers(1, 3)), max_size=3, unique_by=lambda x: x[0]),
           st.sampled_from([P(1), t ** 2 + 1, t ** 2 - 2]), st.sampled_from([1, -2, Fraction(1, 3)]))
    def test_split_reassembles(self, roots, extra, lc):
        b = Poly.from_roots(roots) * extra * lc
        factors, rem = rational_linear_split(b)
        assert sorted(factors) == sorted(roots)
        assert Poly.from_roots(factors) * rem * b.lc == b
        assert not rational_roots(rem) if rem.degree >= 1 else rem == P(1)


def _has_factor_by_enumeration(q):
    """Brute force: look for a monic rational factor with small integer-ish coefficients."""
    d = q.degree
    vals = [Fraction(n, m) for n in range(-3, 4) for m in (1, 2)]
    for k in range(1, d // 2 + 1):
        for tail in product(vals, repeat=k):
            g = Poly(list(tail) + [1])
            if g.divides(q):
                return True
    return False


class TestIrreducibility:
    def test_examples(self):
        assert irreducibility_certificate(t ** 2 + 1) is Certificate.PROVEN
        assert irreducibility_certificate(t ** 2 - 1) is Certificate.UNKNOWN
        assert irreducibility_certificate(t ** 3 - 2) is Certificate.PROVEN
        assert irreducibility_certificate(t ** 4 + t + 1) is Certificate.PROVEN

    def test_t4_plus_1_is_never_wrongly_proven(self):
        # reducible modulo every prime, so the mod-p route cannot prove it
        assert irreducibility_certificate(t ** 4 + 1) is Certificate.UNKNOWN

    def test_reducible_quartic(self):
        assert irreducibility_certificate((t ** 2 + 1) * (t ** 2 + 2)) is Certificate.UNKNOWN

    def test_constant_rejected(self):
        with pytest.raises(PreconditionError):
            irreducibility_certificate(P(3))

    @given(nonzero_polys(2, 1), nonzero_polys(3, 1))
    def test_products_never_proven(self, a, b):
        assert irreducibility_certificate(a * b) is Certificate.UNKNOWN

    @given(st.lists(st.integers(-2, 2), min_size=4, max_size=6))
    def test_proven_means_no_small_factor(self, coeffs):
        q = Poly(coeffs + [1])
        if irreducibility_certificate(q) is Certificate.PROVEN:
            assert not _has_factor_by_enumeration(q)


class TestRatFunc:
    def test_reduced_and_monic(self):
        r = RatFunc(2 * t ** 2 - 2, 3 * t - 3)
        assert r.num == Fraction(2, 3) * (t + 1) and r.den == P(1)
        assert r.is_poly()

    def test_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            RatFunc(t, Poly())
