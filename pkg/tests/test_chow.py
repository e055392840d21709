from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from parchern import corpus
from parchern.chow import (ChowMap, ChowModel, exp_class, graded_part, ideal_membership, mul,
                           projective_space, validate_model)
from parchern.errors import (InvalidModelError, ModelMismatchError, PreconditionError,
                             SchemaError)

from conftest import rng_from, seeds
from parchern import generators as gen

MODELS = [projective_space(2), corpus.p1xp1(), corpus.blowup_p2(), corpus.blowup_p1xp1(),
          projective_space(4)]


def test_projective_plane_validates():
    assert validate_model(projective_space(2)).ok


def test_product_of_lines_validates():
    assert validate_model(corpus.p1xp1()).ok


def test_corrupted_table_fails_at_the_associativity_triple():
    rep = validate_model(corpus.corrupted_p2())
    assert not rep.ok
    assert (rep.axiom, rep.labels) == ("associativity", ("h", "h", "1"))


def test_commutativity_violation_is_named():
    m = ChowModel(2, [["1"], ["a", "b"], ["p"]],
                  {("a", "b"): {"p": 1}, ("b", "a"): {"p": 2}}, validate=False)
    rep = validate_model(m)
    assert rep.axiom == "commutativity" and set(rep.labels) == {"a", "b"}


def test_invalid_model_is_refused_by_default():
    with pytest.raises(InvalidModelError):
        ChowModel(2, [["1"], ["h"], ["h^2"]], {("h", "h"): {"h^2": 2}, ("h^2", "1"): {"h^2": 3}})


def test_degree_zero_must_be_one_dimensional():
    with pytest.raises(InvalidModelError):
        ChowModel(1, [["1", "u"], ["p"]])


def test_products_above_the_top_degree_are_refused():
    with pytest.raises(InvalidModelError):
        ChowModel(1, [["1"], ["p"]], {("p", "p"): {"p": 1}})


class TestArithmetic:
    P2 = projective_space(2)
    Q = corpus.p1xp1()

    def test_square_of_one_plus_h(self):
        h = self.P2.gen("h")
        assert mul(1 + h, 1 + h) == 1 + 2 * h + self.P2.gen("h^2")

    def test_mixed_products(self):
        s, h = self.Q.gen("s"), self.Q.gen("h")
        assert mul(s, h) == self.Q.gen("sh")
        assert mul(s, s).is_zero()

    def test_truncation(self):
        assert mul(self.P2.gen("h^2"), self.P2.gen("h")).is_zero()

    def test_exp_examples(self):
        h = self.P2.gen("h")
        s, hq = self.Q.gen("s"), self.Q.gen("h")
        assert exp_class(self.P2.zero()) == 1
        assert exp_class(2 * h) == 1 + 2 * h + 2 * self.P2.gen("h^2")
        assert exp_class(s + hq) == 1 + s + hq + self.Q.gen("sh")

    def test_exp_refuses_a_constant_term(self):
        with pytest.raises(PreconditionError):
            exp_class(1 + self.P2.gen("h"))

    def test_graded_parts(self):
        x = 1 + 2 * self.P2.gen("h") + self.P2.gen("h^2")
        assert graded_part(x, 1) == 2 * self.P2.gen("h")
        assert graded_part(exp_class(Fraction(3, 7) * self.P2.gen("h")), 0) == 1
        with pytest.raises(ValueError):
            graded_part(x, 3)

    def test_models_do_not_mix(self):
        with pytest.raises(ModelMismatchError):
            mul(self.P2.gen("h"), self.Q.gen("s"))
        with pytest.raises(ModelMismatchError):
            self.P2.gen("h") + self.Q.gen("s")

    def test_repr_is_readable(self):
        assert repr(exp_class(2 * self.P2.gen("h"))) == "1 + 2*h + 2*h^2"
        assert repr(self.P2.zero()) == "0"


class TestIdeals:
    def test_point_on_a_line(self):
        P1 = corpus.p1()
        pt = P1.gen("pt")
        assert ideal_membership(pt / 2, ["0"])
        assert not ideal_membership(1 + pt / 2, ["0"])

    def test_sh_in_the_ideal_of_h(self):
        Q = corpus.p1xp1()
        assert ideal_membership(Q.gen("sh"), [Q.gen("h")])
        assert not ideal_membership(Q.gen("s"), [Q.gen("h")])

    def test_exceptional_curve_ideal_on_the_blowup(self):
        B = corpus.blowup_p2()
        # E * E = -pt, so the point class is E-supported; H is not
        assert ideal_membership(B.gen("pt"), ["E"])
        assert not ideal_membership(B.gen("H"), ["E"])


class TestMaps:
    def test_double_cover_doubles_points(self):
        f = corpus.double_cover().ring_map
        assert f.apply(f.source.gen("pt")) == 2 * f.target.gen("pt")

    def test_fibre_integration_table(self):
        P = ChowModel(2, [["1"], ["s", "h"], ["sh"]], {("s", "h"): {"sh": 1}})
        S = ChowModel(1, [["1"], ["s"]])
        q = ChowMap(P, S, {"h": {"1": 1}, "sh": {"s": 1}}, kind="pushforward", shift=1)
        assert q.apply(P.element({"h": 3, "sh": 5})) == S.element({"1": 3, "s": 5})

    def test_identity_map(self):
        m = corpus.blowup_p2()
        x = m.element({"1": 2, "H": Fraction(1, 3), "pt": -1})
        assert ChowMap.identity(m).apply(x) == x

    def test_pullback_degree_two_images_are_derived(self):
        f = corpus.blowup_morphism().ring_map
        assert f.image("h^2") == f.target.gen("pt")

    def test_non_multiplicative_pullback_is_refused(self):
        P2, B = projective_space(2), corpus.blowup_p2()
        with pytest.raises(InvalidModelError):
            ChowMap(P2, B, {"h": {"H": 1}, "h^2": {"pt": 2}})

    def test_inhomogeneous_image_is_refused(self):
        P1 = corpus.p1()
        with pytest.raises(InvalidModelError):
            ChowMap(P1, P1, {"pt": {"1": 1}})


class TestJson:
    def test_round_trip(self):
        for m in MODELS:
            back = ChowModel.from_dict(m.to_dict())
            assert back.labels == m.labels
            for a in m.labels:
                for b in m.labels:
                    if m.degrees[m.index[a]] + m.degrees[m.index[b]] <= m.dimension:
                        assert mul(back.gen(a), back.gen(b)).vector == mul(m.gen(a), m.gen(b)).vector

    def test_rationals_are_written_as_p_over_q(self):
        d = corpus.blowup_p2().to_dict()
        assert {"a": "E", "b": "E", "result": {"pt": "-1/1"}} in d["products"]

    def test_schema_errors_carry_a_path(self):
        bad = {"dimension": 1, "basis": [["1"], ["p"]], "products": [{"a": "p", "b": "p"}]}
        with pytest.raises(SchemaError) as exc:
            ChowModel.from_dict(bad, source="m.json")
        assert exc.value.path == "$.products[0]"
        assert "m.json" in str(exc.value)

    def test_float_coefficients_are_schema_errors(self):
        bad = {"dimension": 1, "basis": [["1"], ["p"]], "divisors": {"D": {"p": 0.5}}}
        with pytest.raises(SchemaError):
            ChowModel.from_dict(bad)


# -- an independent oracle: the blowup of P1 x P1 as a quotient of Q[s, h, e] --------------


def test_blowup_table_matches_a_polynomial_quotient():
    s, h, e = sympy.symbols("s h e")
    G = sympy.groebner([s**2, h**2, s * e, h * e, e**2 + s * h], s, h, e, order="grevlex")
    B = corpus.blowup_p1xp1()
    gens = {"s": s, "h": h, "e": e}
    # the normal form of sh is a single monomial times a unit; measure products against it
    point = G.reduce(s * h)[1]
    for a in "she":
        for b in "she":
            ratio = sympy.nsimplify(G.reduce(gens[a] * gens[b])[1] / point)
            assert ratio.is_Rational
            assert mul(B.gen(a), B.gen(b))["pt"] == Fraction(int(ratio.p), int(ratio.q))


# -- properties ---------------------------------------------------------------------------------


@given(seeds, st.sampled_from(range(len(MODELS))))
def test_exp_turns_sums_into_products(seed, k):
    rng, m = rng_from(seed), MODELS[k]
    pos = list(range(1, m.dimension + 1))
    x, y = gen.element(rng, m, pos), gen.element(rng, m, pos)
    assert exp_class(x + y) == mul(exp_class(x), exp_class(y))


@given(seeds, st.sampled_from(range(len(MODELS))))
def test_multiplication_is_commutative_and_associative(seed, k):
    rng, m = rng_from(seed), MODELS[k]
    x, y, z = (gen.element(rng, m) for _ in range(3))
    assert mul(x, y) == mul(y, x)
    assert mul(mul(x, y), z) == mul(x, mul(y, z))


@given(seeds, st.sampled_from(range(len(MODELS))))
def test_graded_part_is_a_projection(seed, k):
    m = MODELS[k]
    x = gen.element(rng_from(seed), m)
    parts = [graded_part(x, d) for d in range(m.dimension + 1)]
    assert sum(parts, m.zero()) == x
    assert all(graded_part(p, d) == p for d, p in enumerate(parts))
    assert x.in_ch0() == all(p.is_zero() for p in parts[1:])


@given(seeds, st.sampled_from(["double-cover", "blowup", "line-restriction"]))
def test_pullbacks_are_ring_maps(seed, name):
    f = corpus.morphisms()[name]().ring_map
    rng = rng_from(seed)
    x, y = gen.element(rng, f.source), gen.element(rng, f.source)
    assert f.apply(mul(x, y)) == mul(f.apply(x), f.apply(y))
    z = gen.element(rng, f.source, range(1, f.source.dimension + 1))
    assert f.apply(exp_class(z)) == exp_class(f.apply(z))


@given(seeds, st.sampled_from(range(1, len(MODELS))))
def test_multiples_of_a_divisor_lie_in_its_ideal(seed, k):
    m = MODELS[k]
    rng = rng_from(seed)
    D = gen.divisor_class(rng, m)
    assert ideal_membership(mul(D, gen.element(rng, m)), [D])
