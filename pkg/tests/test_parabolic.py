from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from parchern import corpus, generators as gen
from parchern.chow import ChowMap, graded_part, ideal_membership, mul
from parchern.errors import InvalidModelError, ModelMismatchError, SchemaError
from parchern.parabolic import (MultiIndex, NormalCrossingsDivisor, ParabolicKClass,
                                ParabolicMorphism, ch_par, constituent, diff_over_d, direct_sum,
                                frac, k_equal, line, normal_form, pullback_par, tensor_par,
                                trivial, weights_along)

from conftest import rng_from, seeds

half, quarter = Fraction(1, 2), Fraction(1, 4)


def divisor_of(model, ids=None):
    return NormalCrossingsDivisor.from_registry(model, ids)


P1 = corpus.p1()
D_P1 = divisor_of(P1, ["0"])
P2 = corpus.p2()
D_P2 = divisor_of(P2)
Q = corpus.p1xp1()
D_Q = divisor_of(Q)


class TestConstituent:
    def test_half_twist_rounds_down(self):
        assert k_equal(constituent(line(D_P1, {"0": half})), trivial(D_P1, 1))

    def test_half_shift_reaches_the_next_integer(self):
        got = constituent(line(D_P1, {"0": half}), {"0": half})
        assert k_equal(got, line(D_P1, {"0": 1}))

    def test_two_components(self):
        F = line(D_Q, {"s": -quarter, "h": Fraction(3, 4)})
        got = constituent(F, {"s": quarter, "h": quarter})
        assert got.terms[0][1].twist.as_dict() == {"h": 1}

    def test_floor_includes_the_integer_itself(self):
        F = line(D_P1, {"0": Fraction(1, 3)})
        assert constituent(F, {"0": Fraction(2, 3)}).terms[0][1].twist["0"] == 1
        assert constituent(F, {"0": Fraction(2, 3) - Fraction(1, 99)}).terms[0][1].twist["0"] == 0

    def test_multiplicities_survive(self):
        F = line(D_P1, {"0": half}, mult=3)
        assert constituent(F, {"0": half}).rank == 3


class TestChPar:
    def test_half_point_on_a_line(self):
        assert ch_par(line(D_P1, {"0": half})) == 1 + P1.gen("pt") / 2

    def test_balanced_pair_on_the_plane(self):
        F = line(D_P2, {"L": half}) + line(D_P2, {"L": -half})
        assert ch_par(F) == 2 + P2.gen("h^2") / 4

    def test_trivial_bundle(self):
        assert ch_par(trivial(D_P2, 5)) == 5

    def test_tensor_of_sum_is_termwise(self):
        L1, L2 = line(D_Q, {"s": half}, c1=Q.gen("h")), line(D_Q, {"h": quarter})
        M = line(D_Q, {"s": Fraction(1, 3)}, c1=Q.gen("s"))
        assert k_equal(tensor_par(L1 + L2, M), tensor_par(L1, M) + tensor_par(L2, M))


class TestWeights:
    def test_half_weight(self):
        # L(bD) jumps at beta = -b (mod 1)
        assert weights_along(line(D_P1, {"0": half}), "0") == Counter({half: 1})

    def test_integral_twist_has_weight_zero(self):
        assert weights_along(line(D_P1, {"0": 1}), "0") == Counter({0: 1})

    def test_opposite_quarters_share_a_weight(self):
        F = line(D_P1, {"0": -quarter}) + line(D_P1, {"0": Fraction(3, 4)})
        assert weights_along(F, "0") == Counter({quarter: 2})

    def test_unknown_component(self):
        with pytest.raises(KeyError):
            weights_along(line(D_P1), "inf")


class TestDiffOverD:
    def test_half_point(self):
        r = diff_over_d(line(D_P1, {"0": half}))
        assert r.difference == P1.gen("pt") / 2 and r.supported_on_d

    def test_integral_twists_give_zero(self):
        r = diff_over_d(line(D_P2, {"L": 2, "M": -1}), {"L": quarter, "M": half})
        assert r.difference.is_zero() and r.supported_on_d

    def test_half_line_on_the_plane(self):
        r = diff_over_d(line(D_P2, {"L": half}))
        assert r.difference == P2.gen("h") / 2 + P2.gen("h^2") / 8
        assert r.supported_on_d


class TestPullback:
    def test_double_cover_clears_the_half(self):
        f = corpus.double_cover()
        got = pullback_par(f, line(f.divisor_down, {"0": half}))
        ((mult, lb),) = got.terms
        assert lb.twist.as_dict() == {"0'": 1}
        assert lb.twist.is_integral()

    def test_identity(self):
        f = corpus.identity_morphism(P2)
        F = line(D_P2, {"L": half, "M": -Fraction(2, 3)}, c1=P2.gen("h"), mult=2)
        assert pullback_par(f, F) == F

    def test_total_transform_of_a_line_through_the_centre(self):
        f = corpus.blowup_morphism()
        ((_, lb),) = pullback_par(f, line(f.divisor_down, {"L": half})).terms
        assert lb.twist.as_dict() == {"Lt": half, "E": half}

    def test_inconsistent_component_map_is_refused(self):
        f = corpus.blowup_morphism()
        with pytest.raises(InvalidModelError):
            ParabolicMorphism(f.ring_map, f.divisor_down, f.divisor_up,
                              {"L": {"Lt": 1}, "M": {"Mt": 1}})

    def test_fractional_component_map_is_refused(self):
        f = corpus.double_cover()
        with pytest.raises(InvalidModelError):
            ParabolicMorphism(f.ring_map, f.divisor_down, f.divisor_up, {"0": {"0'": half}})

    def test_wrong_divisor(self):
        with pytest.raises(ModelMismatchError):
            pullback_par(corpus.double_cover(), line(D_P2))


class TestKClasses:
    def test_terms_are_not_merged(self):
        F = line(D_P1, {"0": half}) + line(D_P1, {"0": half})
        assert len(F.terms) == 2 and F.rank == 2

    def test_normal_form_moves_integers_into_c1(self):
        F = line(D_P1, {"0": Fraction(3, 2)})
        ((lb, m),) = normal_form(F).items()
        assert lb.c1 == P1.gen("pt") and lb.twist.as_dict() == {"0": half}

    def test_equal_chern_character_does_not_mean_equal_class(self):
        D = divisor_of(P1)
        F = line(D, {"0": 1}) + line(D, {"inf": -1})
        G = trivial(D, 2)
        assert ch_par(F) == ch_par(G)
        assert not k_equal(F, G)

    def test_cancellation(self):
        F = line(D_P1, {"0": half})
        assert not normal_form(F - F)

    def test_json_round_trip(self):
        F = line(D_P2, {"L": half}, c1=P2.gen("h"), mult=2) - line(D_P2, {"M": Fraction(-1, 3)})
        back = ParabolicKClass.from_dict(F.to_dict(), P2)
        assert back == F

    def test_json_paths(self):
        with pytest.raises(SchemaError) as exc:
            ParabolicKClass.from_dict({"terms": [{"c1": {"h": "1/2"}, "twist": {"X": "1"}}]}, P2)
        assert exc.value.path == "$.terms[0].twist"
        with pytest.raises(SchemaError) as exc:
            ParabolicKClass.from_dict({"terms": [{"c1": {"h^2": 1}}]}, P2)
        assert exc.value.path == "$.terms[0].c1"

    def test_twist_off_the_divisor(self):
        with pytest.raises(InvalidModelError):
            line(D_P1, {"inf": half})


# -- properties ---------------------------------------------------------------------------------

DIVISORS = [D_P1, divisor_of(P1), D_P2, D_Q, divisor_of(corpus.blowup_p2()),
            divisor_of(corpus.blowup_p1xp1())]
which = st.sampled_from(range(len(DIVISORS)))


@given(seeds, which)
def test_ch_par_is_additive(seed, k):
    rng, D = rng_from(seed), DIVISORS[k]
    F, G = gen.kclass(rng, D, signed=True), gen.kclass(rng, D, signed=True)
    assert ch_par(direct_sum(F, G)) == ch_par(F) + ch_par(G)


@given(seeds, which)
def test_ch_par_is_multiplicative(seed, k):
    rng, D = rng_from(seed), DIVISORS[k]
    F, G = gen.kclass(rng, D, signed=True), gen.kclass(rng, D, signed=True)
    assert ch_par(tensor_par(F, G)) == mul(ch_par(F), ch_par(G))


@given(seeds, st.sampled_from(["double-cover", "blowup", "line-restriction"]))
def test_pullback_commutes_with_ch_par(seed, name):
    f = corpus.morphisms()[name]()
    F = gen.kclass(rng_from(seed), f.divisor_down, signed=True)
    assert ch_par(pullback_par(f, F)) == f.ring_map.apply(ch_par(F))


@given(seeds, which)
def test_shifting_by_a_delta_twists_by_the_component(seed, k):
    rng, D = rng_from(seed), DIVISORS[k]
    F, beta = gen.kclass(rng, D), gen.multi_index(rng, D)
    for cid in D.ids:
        lhs = constituent(F, beta + MultiIndex.delta(cid))
        rhs = tensor_par(constituent(F, beta), line(D, {cid: 1}))
        assert k_equal(lhs, rhs)


@given(seeds, which, st.data())
def test_constituents_are_locally_constant_from_the_right(seed, k, data):
    rng, D = rng_from(seed), DIVISORS[k]
    F, beta = gen.kclass(rng, D), gen.multi_index(rng, D)
    eps = {}
    for cid in D.ids:
        # the gap from beta to the next jump b + beta in Z, over all terms
        gaps = [1 - frac(lb.twist[cid] + beta[cid]) for _, lb in F.terms]
        c = min(gaps)
        eps[cid] = c * data.draw(st.fractions(0, 1).filter(lambda x: x < 1))
    assert k_equal(constituent(F, beta + MultiIndex(eps)), constituent(F, beta))


@given(seeds, which)
def test_degree_zero_of_ch_par_is_the_rank(seed, k):
    F = gen.kclass(rng_from(seed), DIVISORS[k], signed=True)
    assert graded_part(ch_par(F), 0) == F.rank


@given(seeds, which)
def test_difference_from_a_constituent_lives_on_d(seed, k):
    rng, D = rng_from(seed), DIVISORS[k]
    F = gen.kclass(rng, D, signed=True)
    assert diff_over_d(F, gen.multi_index(rng, D)).supported_on_d


@given(seeds, which)
def test_ch0_parabolic_character_forces_constituents_onto_d(seed, k):
    rng, D = rng_from(seed), DIVISORS[k]
    lb = gen.line_bundle(rng, D)
    dual = type(lb)(-lb.c1, -lb.twist)
    F = ParabolicKClass(D, ((1, lb), (1, dual)))
    # L(B) + L(B)^dual has ch_par = 2 + (c1 + B)^2, in CH^0 exactly when the square vanishes
    assume(ch_par(F).in_ch0())
    comps = [c for _, c in D.components]
    assert ideal_membership(ch_par(constituent(F, gen.multi_index(rng, D))) - F.rank, comps)


@given(seeds)
def test_pullback_is_functorial(seed):
    f = corpus.line_restriction()
    Y = f.divisor_up.model
    cover = corpus.p1("Y2", {"yL'": {"pt": 1}, "yM'": {"pt": 1}})
    up = divisor_of(cover)
    g = ParabolicMorphism(ChowMap(Y, cover, {"pt": {"pt": 2}}), f.divisor_up, up,
                          {"yL": {"yL'": 2}, "yM": {"yM'": 2}})
    fg = ParabolicMorphism(ChowMap(f.divisor_down.model, cover, {"h": {"pt": 2}}),
                           f.divisor_down, up, {"L": {"yL'": 2}, "M": {"yM'": 2}})
    F = gen.kclass(rng_from(seed), f.divisor_down, signed=True)
    assert pullback_par(fg, F) == pullback_par(g, pullback_par(f, F))
