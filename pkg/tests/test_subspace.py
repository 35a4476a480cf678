from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import nonzero_polys, polys, small_lambdas, subspaces
from weylpd import subspace as ss
from weylpd.errors import PreconditionError
from weylpd.oracle import oracle_span_member
from weylpd.poly import Poly, RatFunc, gcd_monic, rational_linear_split

t = Poly.t()
one = Poly.const(1)


def k_plus(q):
    return ss.make(q, [one], canonical=True)


class TestExamples:
    def test_membership(self):
        V = k_plus(t ** 2)
        assert ss.membership(V, t ** 3 + 5)
        assert not ss.membership(V, t)

    def test_make_rejects_zero_modulus(self):
        with pytest.raises(PreconditionError):
            ss.make(Poly(), [one])

    def test_equality_is_representation_independent(self):
        V = ss.make(t ** 4, [one, t ** 2 + t ** 3])
        W = ss.make(t ** 6, [3 + t ** 5, t ** 2 + t ** 3, t ** 4, t ** 5])
        assert ss.equal(V, W) and V == W and hash(V) == hash(W)

    def test_intersection_example(self):
        V = ss.intersect(k_plus(t ** 2), k_plus((t - 1) ** 2))
        assert V.modulus == t ** 2 * (t - 1) ** 2
        assert ss.equal(V, ss.make(V.modulus, [one, 2 * t ** 3 - 3 * t ** 2]))
        assert str(V) == "span{1, t^3 - 3/2*t^2} + ideal(t^4 - 2*t^3 + t^2)"

    def test_lattice_trivia(self):
        V = k_plus(t ** 3)
        assert ss.equal(ss.sum_(V, ss.R()), ss.R())
        assert ss.equal(ss.intersect(V, V), V)

    def test_scale_examples(self):
        assert ss.equal(ss.scale(ss.ideal(t ** 2), RatFunc(one, t)), ss.ideal(t))
        assert ss.equal(ss.scale(k_plus(t ** 2), t), ss.make(t ** 3, [t]))
        with pytest.raises(PreconditionError, match="scale leaves R"):
            ss.scale(k_plus(t ** 2), RatFunc(one, t))

    def test_conductor_examples(self):
        assert ss.conductor(k_plus(t ** 3)) == t ** 3
        assert ss.conductor(ss.R()) == one
        assert ss.conductor(ss.Oh_space(t, one)) == t ** 2 == ss.conductor(ss.O_space(t))

    def test_stabilizer_examples(self):
        assert ss.equal(ss.stabilizer(k_plus(t ** 2)).algebra, k_plus(t ** 2))
        assert ss.equal(ss.stabilizer(ss.ideal(t ** 2 + 3)).algebra, ss.R())
        rep = ss.stabilizer(k_plus(t ** 2 + 1))
        assert ss.equal(rep.algebra, k_plus(t ** 2 + 1)) and rep.is_unital_algebra

    def test_model_spaces(self):
        assert ss.equal(ss.O_space(t ** 2), k_plus(t ** 3))
        assert ss.equal(ss.O_space(one), ss.R())
        Oh = ss.Oh_space(t, one)
        assert Oh.codim == 1 and ss.conductor(Oh) == t ** 2
        assert ss.membership(Oh, t - 1) and not ss.membership(Oh, one)
        with pytest.raises(PreconditionError):
            ss.O_space(Poly())

    def test_primary_intersection_examples(self):
        assert ss.verify_lemma2([Fraction(0)], [2], [k_plus(t ** 2)])
        assert ss.verify_lemma2([Fraction(0), Fraction(1)], [1, 1], [ss.ideal(t), ss.ideal(t - 1)])
        with pytest.raises(PreconditionError):
            ss.verify_lemma2([Fraction(0), Fraction(0)], [1, 1], [ss.ideal(t), ss.ideal(t)])

    def test_pd_combine_examples(self):
        V = k_plus(t ** 2)
        assert ss.pd_combine(V, t, V, t) == t ** 2
        assert ss.pd_combine(ss.ideal(t), t ** 5, ss.ideal(t + 1), one) == t ** 5

    def test_coprime_sum_examples(self):
        assert ss.verify_lemma6_6(t, one, 1 - t)
        assert ss.verify_lemma6_6(t ** 2 + 1, Poly(), one)
        with pytest.raises(PreconditionError, match="not in O"):
            ss.verify_lemma6_6(t, one, one)

    def test_classical_decompose_examples(self):
        V = ss.intersect(k_plus(t ** 2), k_plus((t - 1) ** 2))
        comps = ss.classical_decompose(V, t * (t - 1))
        assert len(comps) == 2
        assert ss.equal(ss.intersect(*comps), V)
        assert [ss.equal(c, k) for c, k in zip(comps, (k_plus(t ** 2), k_plus((t - 1) ** 2)))] == [True, True]
        single = ss.classical_decompose(k_plus(t ** 2), t)
        assert len(single) == 1 and ss.equal(single[0], k_plus(t ** 2))
        with pytest.raises(PreconditionError, match="does not split"):
            ss.classical_decompose(ss.O_space(t ** 2 + 1), t ** 2 + 1)
        with pytest.raises(PreconditionError, match="proper ideal"):
            ss.classical_decompose(ss.ideal(t), t)

    def test_serialization(self):
        assert k_plus(t ** 2).to_dict() == {"basis": ["1"], "canonical": True, "modulus": "t^2"}
        assert str(ss.R()) == "R" and str(ss.ideal(t + 1)) == "ideal(t + 1)"


class TestProperties:
    @given(subspaces(), polys(8))
    def test_membership_matches_brute_force(self, V, p):
        gens = list(V.basis)
        assert ss.membership(V, p) == oracle_span_member(gens, V.modulus, p)

    @given(subspaces())
    def test_canonical_form(self, V):
        C = ss.canonicalize(V)
        q = ss.conductor(V)
        assert q.divides(V.modulus) and C.modulus == q
        assert ss.canonicalize(C).basis == C.basis
        assert C.codim == q.degree - len(C.basis)
        assert ss.equal(C, V)
        assert all(ss.membership(V, q * t ** j) for j in range(4))

    @given(st.lists(st.tuples(small_lambdas, st.integers(1, 3)), min_size=1, max_size=2, unique_by=lambda x: x[0]),
           st.data())
    def test_conductor_is_largest_ideal(self, roots, data):
        q0 = Poly.from_roots(roots)
        V = ss.make(q0, data.draw(st.lists(polys(q0.degree + 1), max_size=q0.degree)))
        q = ss.conductor(V)
        n = q0.degree
        gens = list(V.basis)
        assert all(oracle_span_member(gens, q0, q * t ** j) for j in range(n))
        factors, _ = rational_linear_split(q)
        for lam, _ in factors:
            smaller = q // Poly.from_roots([(lam, 1)])
            assert not all(oracle_span_member(gens, q0, smaller * t ** j) for j in range(n))

    @given(subspaces())
    def test_stabilizer_is_unital_algebra(self, V):
        rep = ss.stabilizer(V)
        A = ss.canonicalize(rep.algebra)
        assert rep.is_unital_algebra and ss.membership(A, one)
        assert ss.include(ss.ideal(ss.conductor(V)), A)
        for a in A.basis:
            for b in A.basis:
                assert ss.membership(A, a * b)
            for w in list(V.basis) + [V.modulus]:
                assert ss.membership(V, a * w)

    @given(nonzero_polys(2, 1), nonzero_polys(2, 1))
    def test_model_space_algebra_and_product(self, a, b):
        Oa = ss.O_space(a)
        assert Oa.codim == a.degree
        for x in Oa.basis:
            for y in Oa.basis:
                assert ss.membership(Oa, x * y)
        assert ss.include(ss.O_space(a * b), ss.intersect(Oa, ss.O_space(b)))

    @given(nonzero_polys(2, 1), polys(2))
    def test_shifted_model_space_parts(self, a, h):
        Oa, Oah = ss.O_space(a), ss.Oh_space(a, h)
        assert ss.include(Oa, ss.stabilizer(Oah).algebra)
        assert ss.conductor(Oa) == ss.conductor(Oah)
        assert ss.include(ss.ideal(a * a), ss.intersect(Oa, Oah))
        assert ss.generated_ideal(Oah) == one

    @given(subspaces(3), subspaces(3), subspaces(3))
    def test_lattice_laws(self, U, V, W):
        assert ss.equal(ss.sum_(U, V), ss.sum_(V, U))
        assert ss.equal(ss.intersect(U, V), ss.intersect(V, U))
        assert ss.equal(ss.sum_(U, ss.intersect(U, V)), U)
        assert ss.equal(ss.intersect(U, ss.sum_(U, V)), U)
        assert ss.equal(ss.intersect(ss.intersect(U, V), W), ss.intersect(U, ss.intersect(V, W)))

    @given(subspaces(3), subspaces(3), polys(6))
    def test_sum_and_intersection_membership(self, V, W, p):
        if ss.membership(V, p) and ss.membership(W, p):
            assert ss.membership(ss.intersect(V, W), p)
        elif ss.membership(ss.intersect(V, W), p):
            pytest.fail("intersection contains a non-member")
        if ss.membership(V, p):
            assert ss.membership(ss.sum_(V, W), p)

    @given(subspaces(3), nonzero_polys(2, 1))
    def test_scale_round_trip(self, V, s):
        sV = ss.scale(V, s)
        assert ss.equal(ss.scale(sV, RatFunc(one, s)), V)
        assert all(ss.membership(sV, s * b) for b in V.basis)

    @given(st.lists(small_lambdas, min_size=1, max_size=3, unique=True), st.data())
    def test_intersection_of_primaries_stabilizer(self, lams, data):
        Vs = []
        for lam in lams:
            r = data.draw(st.integers(1, 3))
            q = Poly.from_roots([(lam, r)])
            gens = data.draw(st.lists(polys(r - 1), max_size=r))
            Vs.append(ss.make(q, gens, canonical=True))
        W = Vs[0]
        for X in Vs[1:]:
            W = ss.intersect(W, X)
        q = ss.conductor(W)
        assert ss.include(ss.O_space(q), ss.stabilizer(W).algebra)
        assert gcd_monic(q, Poly.from_roots([(lam, 3) for lam in lams])) == q
