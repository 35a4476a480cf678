from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import nonzero_ops, nonzero_polys, ops, polys
from weylpd.errors import PreconditionError
from weylpd.poly import Poly
from weylpd.weyl import (DPolyView, WeylOp, apply, apply_monomial, build_f, commutator, in_left_principal,
                         principal_coset_member, sigma, weyl_mul)

t, D = WeylOp.t(), WeylOp.D()
pt = Poly.t()


def test_basic_relation():
    assert weyl_mul(D, t) == t * D + 1
    assert weyl_mul(D ** 2, t) == t * D ** 2 + 2 * D
    assert commutator(D, t) == WeylOp.const(1)


def test_rendering():
    f = build_f(pt ** 2)
    assert str(f) == "t^2*D^2 - 2*t*D + 2"
    assert f.to_str(unicode=True) == "t^2*∂^2 - 2*t*∂ + 2"
    assert str(WeylOp()) == "0"


def test_apply_examples():
    assert apply(t * D - 1, pt ** 3) == 2 * pt ** 3
    p = pt ** 4 - 3
    assert apply(WeylOp.const(1), p) == p
    assert apply(t ** 2 * D ** 2 - 2 * t * D + 2, pt) == Poly()


def test_sigma_examples():
    one = Poly.const(1)
    assert sigma(one, D) == D - 1
    assert sigma(pt ** 2 + 1, t) == t
    assert sigma(pt, D * t) == t * D - t ** 2 + 1


def test_principal_coset_examples():
    zero = Poly()
    assert principal_coset_member(t * D - 1, pt, zero)
    assert not principal_coset_member(WeylOp.const(1), pt, zero)
    with pytest.raises(PreconditionError):
        principal_coset_member(D, Poly(), zero)


def test_principal_coset_regression():
    # (D + 1) t^2 g = t^2 (D + 1) g + 2 t g lies in t^2 A1 exactly when g lies in t A1
    b, h = pt ** 2, Poly.const(1)
    cases = {WeylOp.const(1): False, t: True, D: False, t * D: True, D * t: False}
    for g, expected in cases.items():
        assert principal_coset_member(weyl_mul(WeylOp.from_poly(b), g), b, h) is expected


def test_build_f_examples():
    assert build_f(pt) == t * D - 1
    assert apply(build_f(pt), Poly.const(1)) == Poly.const(-1)
    f = build_f(pt ** 2)
    assert f == t ** 2 * D ** 2 - 2 * t * D + 2
    assert [apply(f, pt ** j) for j in range(4)] == [Poly.const(2), Poly(), Poly(), 2 * pt ** 3]
    assert build_f(Poly.const(Fraction(5, 2))) == WeylOp.const(Fraction(5, 2))
    with pytest.raises(PreconditionError):
        build_f(Poly())


def test_low_powers_map_to_constants():
    # f(t^j) = beta_(m-j) (-1)^(m-j) (m-j)! j! for j <= m; t(t-1) gives f(t) = 1
    f = build_f(pt * (pt - 1))
    assert apply(f, pt) == Poly.const(1)


def test_dpoly_view_round_trip():
    d = t ** 2 * D ** 3 - 4 * D + t
    v = d.view()
    assert v.coeff_seq[3] == pt ** 2 and v.to_op() == d
    assert DPolyView([pt, Poly()]).coeff_seq == (pt,)


def test_degrees():
    d = t ** 3 * D + D ** 2
    assert (d.deg_t, d.deg_d) == (3, 2)
    assert WeylOp().deg_d < 0


@given(ops(2, 2), ops(2, 2), ops(2, 2))
def test_associative_and_distributive(d, e, f):
    assert (d * e) * f == d * (e * f)
    assert d * (e + f) == d * e + d * f
    assert (d + e) * f == d * f + e * f


@given(ops(), ops(), polys(5))
def test_composition_law(d, e, p):
    assert apply(d * e, p) == apply(d, apply(e, p))


@given(nonzero_ops(), nonzero_ops())
def test_degrees_add(d, e):
    de = d * e
    assert de.deg_d == d.deg_d + e.deg_d
    assert de.deg_t == d.deg_t + e.deg_t


@given(polys(2), ops(2, 2), ops(2, 2))
def test_sigma_is_automorphism(h, d, e):
    assert sigma(h, d * e) == sigma(h, d) * sigma(h, e)
    assert sigma(h, WeylOp.const(1)) == WeylOp.const(1)
    assert sigma(-h, sigma(h, d)) == d
    assert sigma(Poly(), d) == d


@given(ops(), st.integers(0, 8))
def test_apply_monomial_matches_apply(d, n):
    assert apply_monomial(d, n) == apply(d, pt ** n)


@given(nonzero_polys(6))
def test_build_f_identity(b):
    m = b.degree
    assert D * build_f(b) == WeylOp.from_poly(b) * D ** (m + 1)


@given(nonzero_polys(3, 1), ops())
def test_left_multiples_are_in_principal(b, g):
    assert in_left_principal(WeylOp.from_poly(b) * g, b)


@given(ops(), ops())
def test_commutator_antisymmetric(d, e):
    assert commutator(d, e) == -commutator(e, d)
    assert not commutator(d, d)
