from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from parchern import corpus, linalg
from parchern.errors import InvalidModelError, SchemaError
from parchern.steenbrink import (LogComplex, TruncatedSeriesRing, check_hypotheses,
                                 euler_characteristic, fiber_cohomology_ranks, format_poly,
                                 generic_rank, parse_poly, pm, pm_identity, pm_maxdeg, pmul, ptrim,
                                 random_split_complex, verdict)

from complexes import random_solved_complex
from conftest import rng_from, seeds, small_fractions

F = Fraction
t = sympy.symbols("t")


def poly_to_sympy(p):
    return sum((sympy.Rational(c.numerator, c.denominator) * t**k for k, c in enumerate(p)),
               sympy.Integer(0))


# -- polynomials ------------------------------------------------------------------------------


@pytest.mark.parametrize("text,coeffs", [
    ("1 - 2t + t^2", (1, -2, 1)), ("3/2*t^3", (0, 0, 0, F(3, 2))), ("-t", (0, -1)),
    ("0", ()), ("t - t", ()), ("2 t", (0, 2)), ("  7 ", (7,))])
def test_parse_poly(text, coeffs):
    assert parse_poly(text) == tuple(F(c) for c in coeffs)


@pytest.mark.parametrize("bad,offset", [("1 + ", 2), ("1 t t", 4), ("x", 0), ("", 0), ("1 + * t", 4)])
def test_parse_errors_name_the_offset(bad, offset):
    with pytest.raises(ValueError, match=f"offset {offset}"):
        parse_poly(bad)


polys = st.lists(small_fractions, max_size=5).map(ptrim)


@given(polys)
def test_format_and_parse_round_trip(p):
    assert parse_poly(format_poly(p)) == p


@given(polys, polys)
def test_polynomial_product_matches_sympy(a, b):
    assert sympy.expand(poly_to_sympy(pmul(a, b)) - poly_to_sympy(a) * poly_to_sympy(b)) == 0


def test_truncated_ring():
    R = TruncatedSeriesRing(3)
    assert R.mul(parse_poly("1 + t"), parse_poly("1 + t + t^2")) == parse_poly("1 + 2t + 2t^2")
    with pytest.raises(InvalidModelError):
        TruncatedSeriesRing(1)


# -- generic rank -----------------------------------------------------------------------------

poly_matrices = st.integers(1, 3).flatmap(lambda r: st.integers(1, 3).flatmap(
    lambda c: st.lists(st.lists(polys, min_size=c, max_size=c), min_size=r, max_size=r)))


@given(poly_matrices)
def test_generic_rank_matches_evaluation_at_many_points(m):
    """Rank over Q(t) is the maximum of the ranks of its specialisations.

    Minors have degree at most ``3 * 4``, so 13 distinct points reach it.
    """
    best = 0
    for x in range(13):
        ev = [[sum((c * x**k for k, c in enumerate(p)), F(0)) for p in row] for row in m]
        best = max(best, linalg.rank(ev))
    assert generic_rank(tuple(tuple(r) for r in m)) == best


def test_generic_rank_against_sympy():
    m = pm([["t", "t^2"], ["1", "t"]])
    assert generic_rank(m) == 1
    assert sympy.Matrix([[t, t**2], [1, t]]).rank() == 1


# -- fixtures -----------------------------------------------------------------------------------


def single_term(m1):
    return LogComplex(2, (1,), (), (pm([[1]]),), (pm([[m1]]),))


class TestRanks:
    def test_t_multiplication_jumps(self):
        c = corpus.t_multiplication_complex()
        assert fiber_cohomology_ranks(c, "origin") == [1, 1]
        assert fiber_cohomology_ranks(c, "generic") == [0, 0]

    def test_zero_differential(self):
        c = LogComplex(2, (1, 1), (pm([[0]]),), (pm([[1]]), pm([[1]])), (pm([[0]]), pm([[0]])))
        assert fiber_cohomology_ranks(c, "origin") == fiber_cohomology_ranks(c, "generic") == [1, 1]

    def test_identity_differential_is_acyclic(self):
        one, zero = pm_identity(2), pm([[0, 0], [0, 0]])
        c = LogComplex(2, (2, 2), (one,), (one, one), (zero, zero))
        assert fiber_cohomology_ranks(c, "origin") == fiber_cohomology_ranks(c, "generic") == [0, 0]

    def test_unknown_fibre(self):
        with pytest.raises(ValueError):
            fiber_cohomology_ranks(corpus.gauge_complex(), "special")


class TestHypotheses:
    def test_trivial_connection(self):
        h = check_hypotheses(corpus.trivial_connection_complex())
        assert h.m0_identity and h.residue_nilpotent

    def test_half_residue_is_not_nilpotent(self):
        h = check_hypotheses(single_term("1/2"))
        assert h.m0_identity and not h.residue_nilpotent
        assert h.residue_eigenvalues == ((F(1, 2),),)

    def test_t_multiplication_forces_an_indicial_shift(self):
        c = corpus.t_multiplication_complex()
        h = check_hypotheses(c)
        a, b = h.residue_induced
        assert a[0][0] - b[0][0] == 1
        assert not h.residue_nilpotent

    def test_m0_scalar_two(self):
        c = LogComplex(2, (1,), (), (pm([[2]]),), (pm([[0]]),))
        assert not check_hypotheses(c).m0_identity


class TestVerdict:
    def test_trivial_connection_passes(self):
        v = verdict(corpus.trivial_connection_complex())
        assert v.status == "PASS" and v.origin_ranks == (2, 1)

    def test_t_multiplication_is_rejected_before_any_claim(self):
        v = verdict(corpus.t_multiplication_complex())
        assert v.status == "HYPOTHESIS_FAILED"
        assert v.euler_constant
        assert any("not nilpotent" in r for r in v.reasons)
        assert any("rank jump" in r for r in v.reasons)

    def test_moving_frame_is_still_split(self):
        v = verdict(corpus.gauge_complex())
        assert v.status == "PASS" and v.origin_ranks == v.generic_ranks == (1, 0)

    def test_euler_characteristic(self):
        assert euler_characteristic([2, 3, 1]) == 0


class TestValidation:
    def test_d_squared(self):
        with pytest.raises(InvalidModelError, match="o d"):
            LogComplex(3, (1, 1, 1), (pm([[1]]), pm([[1]])), (pm([[1]]),) * 3, (pm([[0]]),) * 3)

    def test_degree_bound(self):
        with pytest.raises(InvalidModelError, match="must exceed"):
            LogComplex(2, (1, 1), (pm([["t"]]),), (pm([[1]]),) * 2, (pm([[0]]), pm([[-1]])))

    def test_m1_must_differentiate_d(self):
        with pytest.raises(InvalidModelError, match="derivation"):
            LogComplex(4, (1, 1), (pm([["t"]]),), (pm([[1]]),) * 2, (pm([[0]]), pm([[0]])))

    def test_m0_must_commute(self):
        with pytest.raises(InvalidModelError, match="commute"):
            LogComplex(2, (1, 1), (pm([[1]]),), (pm([[1]]), pm([[2]])), (pm([[0]]),) * 2)

    def test_shapes(self):
        with pytest.raises(InvalidModelError):
            LogComplex(2, (2, 1), (pm([[1]]),), (pm_identity(2), pm_identity(1)),
                       (pm_identity(2), pm_identity(1)))

    def test_json_round_trip(self):
        for make in corpus.complexes().values():
            c = make()
            assert LogComplex.from_dict(c.to_dict()) == c

    def test_json_paths(self):
        data = corpus.gauge_complex().to_dict()
        data["M1"][1][0][0] = "2 t t"
        with pytest.raises(SchemaError) as exc:
            LogComplex.from_dict(data, source="c.json")
        assert exc.value.path == "$.M1[1][0][0]"
        data = corpus.gauge_complex().to_dict()
        data["N"] = 1.5
        with pytest.raises(SchemaError) as exc:
            LogComplex.from_dict(data)
        assert exc.value.path == "$.N"


# -- properties ---------------------------------------------------------------------------------


@given(seeds)
def test_split_complexes_never_violate_the_criterion(seed):
    c = random_split_complex(rng_from(seed))
    assert max(c.ranks) <= 4 and c.N <= 6
    assert c.N > max(pm_maxdeg(m) for m in c.d + c.m0 + c.m1) + 1
    v = verdict(c)
    assert v.status != "THEOREM_VIOLATION"
    assert v.origin_ranks == v.generic_ranks
    assert v.euler_constant


@given(seeds)
def test_non_nilpotent_residues_are_caught(seed):
    c = random_split_complex(rng_from(seed), nilpotent=False)
    v = verdict(c)
    if v.hypotheses.residue_induced and any(any(p[1:]) for p in v.hypotheses.residue_charpolys):
        assert v.status == "HYPOTHESIS_FAILED"


@given(seeds)
def test_solved_complexes_never_violate_the_criterion(seed):
    c = random_solved_complex(rng_from(seed))
    if c is None:
        return
    v = verdict(c)
    assert v.status != "THEOREM_VIOLATION"
    assert v.euler_constant
    if v.status == "PASS":
        assert v.origin_ranks == v.generic_ranks


@given(seeds, st.integers(1, 4))
def test_zero_differential_with_nilpotent_residue_passes(seed, r):
    rng = rng_from(seed)
    m1 = [[F(rng.randint(-3, 3)) if j > i else F(0) for j in range(r)] for i in range(r)]
    c = LogComplex(rng.randint(2, 6), (r,), (), (pm_identity(r),), (pm(m1),))
    v = verdict(c)
    assert v.status == "PASS" and v.origin_ranks == (r,)
