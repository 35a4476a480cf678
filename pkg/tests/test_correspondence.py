import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import nonzero_polys, ops, subspaces
from weylpd import correspondence as corr
from weylpd import subspace as ss
from weylpd.correspondence import Caps, IdealPresentation
from weylpd.errors import PreconditionError
from weylpd.oracle import oracle_in_DRV
from weylpd.poly import Poly
from weylpd.weyl import WeylOp, apply, build_f, commutator, in_left_principal

t, D = WeylOp.t(), WeylOp.D()
pt = Poly.t()
one = Poly.const(1)


def k_plus(q):
    return ss.make(q, [one], canonical=True)


def ideal_of(*gens):
    return IdealPresentation(tuple(gens))


class TestCaps:
    def test_validation(self):
        with pytest.raises(PreconditionError):
            Caps(p_max=0)
        with pytest.raises(PreconditionError):
            Caps(window=1)
        assert Caps().to_dict() == {"p_max": 6, "r_max": 6, "slack": 0, "t_max": 8, "window": 3}

    def test_membership_bound(self):
        assert corr.membership_bound(0, 2) == 2
        assert corr.membership_bound(2, 3) == 11


class TestInDRV:
    def test_examples(self):
        V = k_plus(pt ** 2)
        assert corr.in_DRV(t * D - 1, V)
        assert not corr.in_DRV(WeylOp.const(1), V)
        assert corr.in_DRV(WeylOp(), V)

    @given(subspaces(4), ops(2, 3))
    def test_conductor_multiples_always_inside(self, V, g):
        q = ss.conductor(V)
        assert corr.in_DRV(WeylOp.from_poly(q) * g, V)

    @settings(max_examples=40)
    @given(subspaces(4), ops(3, 2))
    def test_agrees_with_direct_loop(self, V, d):
        assert corr.in_DRV(d, V) == oracle_in_DRV(d, V, 3)

    def test_oracle_trivia(self):
        assert oracle_in_DRV(WeylOp(), k_plus(pt ** 2), 1)
        assert oracle_in_DRV(WeylOp.const(1), ss.R(), 1)
        with pytest.raises(ValueError):
            oracle_in_DRV(D, ss.R(), 0)


class TestTruncation:
    def test_examples(self):
        assert corr.drv_truncation(k_plus(pt ** 2 + 1), 3) == []
        assert corr.drv_truncation(ss.ideal(pt ** 3 - pt), 2) == []
        trunc = corr.drv_truncation(k_plus(pt ** 2), 1)
        assert t * D - 1 in trunc
        assert all(d.reduce_mod(pt ** 2) == d for d in trunc)

    @settings(max_examples=25)
    @given(subspaces(3), st.integers(0, 2))
    def test_monotone_and_sound(self, V, p):
        V = ss.canonicalize(V)
        small = corr.drv_truncation(V, p)
        big = corr.drv_truncation(V, p + 1)
        assert big[:len(small)] == small
        assert all(corr.in_DRV(d, V) for d in big)


class TestStar1AndFindPoly:
    def test_star1_examples(self):
        assert ss.equal(corr.star1(ideal_of(WeylOp.from_poly(pt ** 2 + 1))), ss.ideal(pt ** 2 + 1))
        I = ideal_of(t * D - 1, t ** 2, t ** 3)
        assert ss.equal(corr.star1(I), k_plus(pt ** 2))
        assert ss.equal(corr.star1(ideal_of(WeylOp.const(1))), ss.R())

    def test_star1_needs_member(self):
        with pytest.raises(PreconditionError, match="no polynomial member known"):
            corr.star1(ideal_of(D + t))

    def test_find_poly_examples(self):
        assert corr.find_poly_in_ideal(ideal_of(t ** 3, t * D - 1)) == pt ** 3
        assert corr.find_poly_in_ideal(ideal_of(D ** 2, t * D - 2)) == one
        assert corr.find_poly_in_ideal(ideal_of(D + t)) is None

    def test_unit_ideal_elimination_identity(self):
        # D^2 t^2 - t (tD - 2) D - 6 (tD - 2) = 14
        assert D ** 2 * t ** 2 - t * (t * D - 2) * D - (t * D - 2) * 6 == WeylOp.const(14)

    @settings(max_examples=25)
    @given(st.lists(ops(2, 2), min_size=1, max_size=2), nonzero_polys(3, 1))
    def test_superset_law(self, gens, q):
        I = ideal_of(*[g for g in gens if g], WeylOp.from_poly(q))
        Vp = corr.star1(I)
        assert ss.include(ss.ideal(I.poly_member), Vp)
        assert all(corr.in_DRV(g, Vp) for g in I.generators)


class TestDecision:
    def test_examples(self):
        v = corr.pd_decide(ss.O_space(pt))
        assert isinstance(v, corr.PD) and v.r == 1 and v.b == pt ** 2
        v = corr.pd_decide(k_plus(pt ** 2 + 1))
        assert isinstance(v, corr.NotPD) and v.rule == "lemma10" and v.q == pt ** 2 + 1
        v = corr.pd_decide(ss.ideal(pt ** 2 + 1))
        assert isinstance(v, corr.PD) and v.r <= 1
        v = corr.pd_decide(ss.R())
        assert isinstance(v, corr.PD) and (v.r, v.b) == (0, one)

    def test_realizer_route(self):
        v = corr.pd_decide(ss.O_space(pt), route="theorem8")
        assert v.route == "theorem8" and v.r == 1 and v.b == pt ** 2
        assert v.realizers == (t * D - 1,)
        with pytest.raises(PreconditionError):
            corr.pd_decide(ss.O_space(pt), route="bogus")

    def test_inconclusive_when_caps_too_small(self):
        # the irreducibility check cannot certify t^4 + 1, so only caps stop the search
        V = k_plus(pt ** 4 + 1)
        v = corr.pd_decide(V, Caps(p_max=2, r_max=2))
        assert isinstance(v, corr.Inconclusive)
        assert v.stabilized and ss.equal(v.last_star1, ss.ideal(pt ** 4 + 1))
        assert v.to_dict()["verdict"] == "inconclusive"

    @settings(max_examples=20)
    @given(nonzero_polys(2, 1), st.data())
    def test_realizer_commutators_land_in_q_ideal(self, b, data):
        v = corr.pd_decide(ss.O_space(b), route="theorem8")
        assert isinstance(v, corr.PD)
        q = ss.conductor(ss.O_space(b))
        for f in v.realizers:
            Oq = ss.O_space(q ** f.deg_d) if f.deg_d else ss.R()
            coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=len(Oq.basis), max_size=len(Oq.basis)))
            s = sum((c * u for c, u in zip(coeffs, Oq.basis)), Poly()) + Oq.modulus * pt
            assert in_left_principal(commutator(f, WeylOp.from_poly(s)), q)

    def test_irreducible_conductor_rule_consistency(self):
        for q in (pt ** 2 + 1, pt ** 2 - 2, pt ** 3 - 2):
            V = k_plus(q)
            assert isinstance(corr.pd_decide(V), corr.NotPD)
            assert all(not corr.drv_truncation(V, p) for p in range(7))


class TestGamma:
    def test_ideal_and_unit_cases(self):
        I, rep = corr.gamma(ss.ideal(pt ** 2 + 1))
        assert I.generators == (WeylOp.from_poly(pt ** 2 + 1),) and not rep.enlarged
        I, rep = corr.gamma(ss.R())
        assert I.generators == (WeylOp.const(1),)

    def test_O_t(self):
        I, rep = corr.gamma(ss.O_space(pt))
        assert t * D - 1 in I.generators and t ** 2 in I.generators
        assert not rep.enlarged and rep.witness == pt

    def test_not_pd_rejected(self):
        with pytest.raises(PreconditionError):
            corr.gamma(k_plus(pt ** 2 + 1))

    def test_round_trips(self):
        for V in (ss.O_space(pt ** 2), ss.R(), ss.intersect(k_plus(pt ** 2), k_plus((pt - 1) ** 2))):
            assert corr.roundtrip_gamma_inv_gamma(V)["ok"]
        rep = corr.roundtrip_gamma_gamma_inv(ideal_of(WeylOp.from_poly(pt ** 2 - 3)))
        assert rep["ok"] and ss.equal(rep["star1"], ss.ideal(pt ** 2 - 3))

    @pytest.mark.parametrize("b", [pt, pt ** 2, Poly.const(3), pt ** 2 + 1])
    def test_f_b_image_is_model_space(self, b):
        assert corr.verify_prop7_image(b)

    def test_f_b_ideal_matches_model_space(self):
        # the ideal f_b A1 + b^2 A1 agrees with D(R, O(b)) in low degrees
        for b in (pt, pt ** 2 + 1, pt * (pt - 1)):
            I = ideal_of(build_f(b), WeylOp.from_poly(b * b))
            rep = corr.roundtrip_gamma_gamma_inv(I, Caps(p_max=4))
            assert rep["ok"] and ss.equal(rep["star1"], ss.O_space(b))
            assert apply(build_f(b), one) != Poly()
