"""Exact linear algebra over the rationals.

Matrices are lists of rows of :class:`fractions.Fraction`.  Everything here is
small and dense; the engine never holds more than a few dozen unknowns.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Optional, Sequence

Matrix = list[list[Fraction]]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def to_fraction(x) -> Fraction:
    """Coerce ``x`` to a Fraction.

    Accepts ints, Fractions and strings of the form ``"p"`` or ``"p/q"``.
    Floats are refused: nothing in this package tolerates rounding.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        m = _RATIONAL_RE.match(x)
        if m is None:
            raise ValueError(f"not a rational literal: {x!r}")
        num, den = m.groups()
        if den is not None and int(den) == 0:
            raise ValueError(f"zero denominator in {x!r}")
        return Fraction(int(num), int(den) if den else 1)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def format_fraction(q: Fraction) -> str:
    """Canonical "p/q" string, always with an explicit positive denominator."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def rref(rows: Sequence[Sequence[Fraction]], ncols: Optional[int] = None):
    """Reduced row echelon form.  Returns ``(rows, pivot_columns)``."""
    a = [[Fraction(v) for v in r] for r in rows]
    if ncols is None:
        ncols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows or not rows[0]:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}`` for an ``m x ncols`` matrix ``A``."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction], ncols: int):
    """One solution of ``A x = rhs`` or ``None`` if the system is inconsistent."""
    if not rows:
        return [Fraction(0)] * ncols if all(v == 0 for v in rhs) else None
    aug = [list(r) + [Fraction(b)] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        x[p] = red[i][ncols]
    return x


def in_span(vectors: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> bool:
    if all(v == 0 for v in target):
        return True
    if not vectors:
        return False
    cols = [list(col) for col in zip(*vectors)]
    return solve(cols, target, len(vectors)) is not None


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    if not a:
        return []
    inner = len(b)
    ncols = len(b[0]) if b else 0
    return [[sum((a[i][k] * b[k][j] for k in range(inner)), Fraction(0))
             for j in range(ncols)] for i in range(len(a))]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def charpoly(m: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    """Characteristic polynomial ``det(x I - M)``, coefficients highest first.

    Faddeev-LeVerrier; the divisions by ``k`` are exact over Q.
    """
    n = len(m)
    coeffs = [Fraction(1)]
    if n == 0:
        return coeffs
    mk = identity(n)
    c = Fraction(1)
    for k in range(1, n + 1):
        am = matmul(m, mk)
        c = -sum((am[i][i] for i in range(n)), Fraction(0)) / k
        coeffs.append(c)
        mk = [[am[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
    return coeffs


def rational_roots(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """Distinct rational roots of a polynomial given highest-coefficient first."""
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[0] == 0:
        cs.pop(0)
    if len(cs) <= 1:
        return []
    roots = []
    while cs and cs[-1] == 0:
        cs.pop()
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
    if len(cs) <= 1:
        return roots
    from math import lcm

    den = 1
    for c in cs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in cs]
    lead, const = abs(ints[0]), abs(ints[-1])

    def divisors(k: int) -> Iterable[int]:
        return (d for d in range(1, k + 1) if k % d == 0)

    for p in divisors(const):
        for q in divisors(lead):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in roots:
                    continue
                val = Fraction(0)
                for c in cs:
                    val = val * cand + c
                if val == 0:
                    roots.append(cand)
    return sorted(roots)
