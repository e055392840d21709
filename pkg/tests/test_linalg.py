from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from parchern import linalg

from conftest import small_fractions

matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(small_fractions, min_size=c, max_size=c), min_size=r, max_size=r)))
square = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(small_fractions, min_size=n, max_size=n), min_size=n, max_size=n))


def to_sympy(m):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in m])


@pytest.mark.parametrize("text,value", [("3", Fraction(3)), ("-2/4", Fraction(-1, 2)),
                                        (" 7 / 3 ", Fraction(7, 3)), (5, Fraction(5))])
def test_to_fraction_accepts_exact_literals(text, value):
    assert linalg.to_fraction(text) == value


@pytest.mark.parametrize("bad", [0.5, True, None, [1]])
def test_to_fraction_rejects_inexact_or_foreign_values(bad):
    with pytest.raises(TypeError):
        linalg.to_fraction(bad)


@pytest.mark.parametrize("bad", ["1/0", "x", "1.5", ""])
def test_to_fraction_rejects_malformed_strings(bad):
    with pytest.raises(ValueError):
        linalg.to_fraction(bad)


def test_format_fraction_is_canonical():
    assert linalg.format_fraction(Fraction(4, -6)) == "-2/3"
    assert linalg.format_fraction(Fraction(2)) == "2/1"
    assert linalg.format_fraction(Fraction(0)) == "0/1"


@given(matrices)
def test_rank_matches_sympy(m):
    assert linalg.rank(m) == to_sympy(m).rank()


@given(matrices)
def test_nullspace_vectors_are_killed_and_independent(m):
    ncols = len(m[0])
    ker = linalg.nullspace(m, ncols)
    assert len(ker) == ncols - linalg.rank(m)
    for v in ker:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
    if ker:
        assert linalg.rank(ker) == len(ker)


@given(matrices, st.data())
def test_solve_finds_a_solution_when_one_exists(m, data):
    ncols = len(m[0])
    x = data.draw(st.lists(small_fractions, min_size=ncols, max_size=ncols))
    rhs = [sum(a * b for a, b in zip(row, x)) for row in m]
    sol = linalg.solve(m, rhs, ncols)
    assert sol is not None
    assert [sum(a * b for a, b in zip(row, sol)) for row in m] == rhs


def test_solve_reports_inconsistency():
    assert linalg.solve([[1, 1], [2, 2]], [1, 3], 2) is None


@given(square)
def test_charpoly_matches_sympy(m):
    x = sympy.symbols("x")
    ref = sympy.Poly(to_sympy(m).charpoly(x).as_expr(), x).all_coeffs()
    assert [sympy.Rational(c.numerator, c.denominator) for c in linalg.charpoly(m)] == ref


@given(st.lists(small_fractions, min_size=1, max_size=4))
def test_rational_roots_recovers_planted_roots(roots):
    # expand prod (x - r)
    coeffs = [Fraction(1)]
    for r in roots:
        coeffs = [a - r * b for a, b in zip(coeffs + [Fraction(0)], [Fraction(0)] + coeffs)]
    assert linalg.rational_roots(coeffs) == sorted(set(roots))


def test_rational_roots_ignores_irrational_ones():
    assert linalg.rational_roots([1, 0, -2]) == []
