"""Rank-constancy checker for logarithmic complexes over a formal disc.

A :class:`LogComplex` is a bounded complex of free modules over
``Q[t]/(t^N)`` with polynomial differentials ``d_i: F^i -> F^{i+1}`` and two
per-term matrices: ``M0``, the action of the scalars, and ``M1``, the action of
``t d/dt``.  ``M1`` acts by ``M1(a f) = a M1(f) + t a'(t) f``, so commuting
with ``d`` means ``d M1 - M1 d = t d'``.

If ``M0`` is the identity on the cohomology of the fibre at ``t = 0`` and the
residue (``M1`` at ``t = 0``) is nilpotent on that cohomology, the cohomology
is free near the origin: the fibre ranks at ``t = 0`` agree with the ranks
over ``Q(t)``.  :func:`verdict` checks both hypotheses and then that
conclusion.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from . import linalg
from .errors import InvalidModelError, SchemaError

Poly = tuple[Fraction, ...]          # coefficients, lowest degree first, no trailing zeros
PolyMatrix = tuple[tuple[Poly, ...], ...]

ZERO: Poly = ()
ONE: Poly = (Fraction(1),)


# -- univariate polynomials over Q ---------------------------------------------------------


def ptrim(p: Sequence[Fraction]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(Fraction(c) for c in p)


def padd(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return ptrim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def pneg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def psub(a: Poly, b: Poly) -> Poly:
    return padd(a, pneg(b))


def pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ZERO
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return ptrim(out)


def ptrunc(a: Poly, n: int) -> Poly:
    return ptrim(a[:n])


def pdeg(a: Poly) -> int:
    return len(a) - 1


def t_deriv(a: Poly) -> Poly:
    """``t * da/dt``."""
    return ptrim([i * c for i, c in enumerate(a)])


def pdivexact(a: Poly, b: Poly) -> Poly:
    """``a / b`` for ``b`` dividing ``a`` exactly."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for k in range(len(q) - 1, -1, -1):
        c = rem[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, y in enumerate(b):
                rem[k + j] -= c * y
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return ptrim(q)


def const(c) -> Poly:
    return ptrim([linalg.to_fraction(c)])


_TERM_RE = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?P<coef>\d+(?:\s*/\s*\d+)?)?\s*(?P<star>\*)?\s*"
    r"(?P<var>t(?:\s*\^\s*(?P<exp>\d+))?)?\s*")


def parse_poly(text: str) -> Poly:
    """Parse strings such as ``"1 - 2t + t^2"`` or ``"3/2*t^3"``.

    Raises :class:`ValueError` naming the character offset of the problem.
    """
    if not isinstance(text, str):
        if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
            return const(text)
        raise ValueError(f"expected a polynomial string, got {text!r}")
    pos, coeffs, first = 0, {}, True
    stripped = text.strip()
    if not stripped:
        raise ValueError("empty polynomial string at offset 0")
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _TERM_RE.match(text, pos)
        if m is None or m.end() == pos or not (m.group("coef") or m.group("var")):
            raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
        if not first and not m.group("sign"):
            raise ValueError(f"missing '+' or '-' in {text!r} at offset {m.start()}")
        if m.group("star") and not (m.group("coef") and m.group("var")):
            raise ValueError(f"dangling '*' in {text!r} at offset {m.start('star')}")
        c = linalg.to_fraction(m.group("coef").replace(" ", "")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-":
            c = -c
        e = 0
        if m.group("var"):
            e = int(m.group("exp")) if m.group("exp") else 1
        coeffs[e] = coeffs.get(e, 0) + c
        pos, first = m.end(), False
    top = max(coeffs) if coeffs else 0
    return ptrim([coeffs.get(i, 0) for i in range(top + 1)])


def format_poly(p: Poly) -> str:
    if not p:
        return "0"
    parts = []
    for e, c in enumerate(p):
        if not c:
            continue
        mag = abs(c)
        var = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
        if not var:
            body = str(mag)
        elif mag == 1:
            body = var
        else:
            body = f"{mag}{var}" if mag.denominator == 1 else f"{mag}*{var}"
        parts.append(("-" if c < 0 else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# -- matrices of polynomials -----------------------------------------------------------------


def pm(rows) -> PolyMatrix:
    """Build a polynomial matrix from nested lists of strings/ints/Fractions/tuples."""
    return tuple(tuple(x if isinstance(x, tuple) else parse_poly(x) if isinstance(x, str) else const(x)
                       for x in row) for row in rows)


def pm_zero(r: int, c: int) -> PolyMatrix:
    return tuple(tuple(ZERO for _ in range(c)) for _ in range(r))


def pm_identity(n: int) -> PolyMatrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def pm_shape(a: PolyMatrix, ncols_hint: int = 0) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else ncols_hint)


def pm_mul(a: PolyMatrix, b: PolyMatrix, trunc: Optional[int] = None) -> PolyMatrix:
    inner = len(b)
    ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for j in range(ncols):
            acc = ZERO
            for k in range(inner):
                if row[k] and b[k][j]:
                    acc = padd(acc, pmul(row[k], b[k][j]))
            new.append(ptrunc(acc, trunc) if trunc is not None else acc)
        out.append(tuple(new))
    return tuple(out)


def pm_add(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return tuple(tuple(padd(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def pm_sub(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return tuple(tuple(psub(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def pm_map(f, a: PolyMatrix) -> PolyMatrix:
    return tuple(tuple(f(x) for x in row) for row in a)


def pm_is_zero(a: PolyMatrix, trunc: Optional[int] = None) -> bool:
    return all(not (ptrunc(x, trunc) if trunc is not None else x) for row in a for x in row)


def pm_eval0(a: PolyMatrix) -> linalg.Matrix:
    return [[x[0] if x else Fraction(0) for x in row] for row in a]


def pm_maxdeg(a: PolyMatrix) -> int:
    return max((pdeg(x) for row in a for x in row if x), default=-1)


def generic_rank(a: PolyMatrix) -> int:
    """Rank over ``Q(t)`` by fraction-free (Bareiss) elimination in ``Q[t]``."""
    m = [list(row) for row in a]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    prev = ONE
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            a_ic = m[i][c]
            for j in range(c, ncols):
                num = psub(pmul(p, m[i][j]), pmul(a_ic, m[r][j]))
                m[i][j] = pdivexact(num, prev)
        prev = p
        r += 1
        if r == nrows:
            break
    return r


# -- the complex -------------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncatedSeriesRing:
    """``Q[t]/(t^N)``."""

    N: int

    def __post_init__(self):
        if self.N < 2:
            raise InvalidModelError("truncation order must be at least 2")

    def reduce(self, p: Poly) -> Poly:
        return ptrunc(p, self.N)

    def mul(self, a: Poly, b: Poly) -> Poly:
        return ptrunc(pmul(a, b), self.N)

    def add(self, a: Poly, b: Poly) -> Poly:
        return ptrunc(padd(a, b), self.N)


@dataclass(frozen=True)
class LogComplex:
    """``F^0 -> F^1 -> ... -> F^m`` over ``Q[t]/(t^N)`` with an action of ``1`` and ``t d/dt``.

    ``d[i]`` is ``ranks[i+1] x ranks[i]``; ``m0[i]`` and ``m1[i]`` are
    ``ranks[i] x ranks[i]``.  Construction validates shapes, the degree bound
    ``N > max t-degree + 1``, ``d o d = 0`` and chain compatibility of both
    actions; violations raise :class:`InvalidModelError`.
    """

    N: int
    ranks: tuple[int, ...]
    d: tuple[PolyMatrix, ...]
    m0: tuple[PolyMatrix, ...]
    m1: tuple[PolyMatrix, ...]
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        for attr in ("ranks", "d", "m0", "m1"):
            object.__setattr__(self, attr, tuple(getattr(self, attr)))
        validate_complex(self)

    @property
    def ring(self) -> TruncatedSeriesRing:
        return TruncatedSeriesRing(self.N)

    @property
    def length(self) -> int:
        return len(self.ranks)

    def to_dict(self) -> dict:
        def enc(mats):
            return [[[format_poly(x) for x in row] for row in mat] for mat in mats]
        return {"N": self.N, "ranks": list(self.ranks), "d": enc(self.d),
                "M0": enc(self.m0), "M1": enc(self.m1)}

    @classmethod
    def from_dict(cls, data, source: Optional[str] = None, name: Optional[str] = None) -> "LogComplex":
        def fail(path, msg):
            raise SchemaError(msg, path, source)

        if not isinstance(data, Mapping):
            fail("$", "a complex must be a JSON object")
        for key in ("N", "ranks", "d", "M0", "M1"):
            if key not in data:
                fail("$", f"missing key {key!r}")
        N = data["N"]
        if not isinstance(N, int) or isinstance(N, bool):
            fail("$.N", "must be an integer")
        ranks = data["ranks"]
        if not isinstance(ranks, list) or not all(
                isinstance(r, int) and not isinstance(r, bool) and r >= 0 for r in ranks):
            fail("$.ranks", "must be a list of non-negative integers")

        def mats(key):
            raw = data[key]
            if not isinstance(raw, list):
                fail(f"$.{key}", "must be a list of matrices")
            out = []
            for i, mat in enumerate(raw):
                if not isinstance(mat, list) or not all(isinstance(r, list) for r in mat):
                    fail(f"$.{key}[{i}]", "must be a list of rows")
                rows = []
                for r, row in enumerate(mat):
                    entries = []
                    for c, x in enumerate(row):
                        try:
                            entries.append(parse_poly(x))
                        except ValueError as exc:
                            fail(f"$.{key}[{i}][{r}][{c}]", str(exc))
                    rows.append(tuple(entries))
                out.append(tuple(rows))
            return tuple(out)

        d, m0, m1 = mats("d"), mats("M0"), mats("M1")
        try:
            return cls(N, tuple(ranks), d, m0, m1, name=name or data.get("name"))
        except InvalidModelError as exc:
            fail("$", str(exc))


def _check_shape(mat: PolyMatrix, rows: int, cols: int, what: str) -> None:
    if len(mat) != rows or any(len(r) != cols for r in mat):
        raise InvalidModelError(f"{what} must be {rows}x{cols}")


def validate_complex(c: LogComplex) -> None:
    n = c.length
    if c.N < 2:
        raise InvalidModelError("truncation order N must be at least 2")
    if n == 0:
        raise InvalidModelError("a complex needs at least one term")
    if len(c.d) != n - 1 or len(c.m0) != n or len(c.m1) != n:
        raise InvalidModelError(
            f"{n} terms need {n - 1} differentials and {n} matrices for each of M0, M1")
    for i, mat in enumerate(c.d):
        _check_shape(mat, c.ranks[i + 1], c.ranks[i], f"d[{i}]")
    for i in range(n):
        _check_shape(c.m0[i], c.ranks[i], c.ranks[i], f"M0[{i}]")
        _check_shape(c.m1[i], c.ranks[i], c.ranks[i], f"M1[{i}]")
    top = max((pm_maxdeg(m) for m in c.d + c.m0 + c.m1), default=-1)
    if c.N <= top + 1:
        raise InvalidModelError(f"N = {c.N} must exceed the largest t-degree ({top}) plus 1")
    for i in range(n - 2):
        # d o d must vanish as polynomials: the generic fibre is taken over Q(t)
        if not pm_is_zero(pm_mul(c.d[i + 1], c.d[i])):
            raise InvalidModelError(f"d[{i + 1}] o d[{i}] != 0")
    for i in range(n - 1):
        lhs = pm_mul(c.d[i], c.m0[i], c.N)
        rhs = pm_mul(c.m0[i + 1], c.d[i], c.N)
        if not pm_is_zero(pm_sub(lhs, rhs), c.N):
            raise InvalidModelError(f"M0 does not commute with d[{i}]")
        comm = pm_sub(pm_mul(c.d[i], c.m1[i]), pm_mul(c.m1[i + 1], c.d[i]))
        if not pm_is_zero(pm_sub(comm, pm_map(t_deriv, c.d[i])), c.N - 1):
            raise InvalidModelError(f"M1 is not a t d/dt-derivation compatible with d[{i}]")


def _differential_ranks(c: LogComplex, at: str) -> list[int]:
    if at == "origin":
        return [linalg.rank(pm_eval0(m)) for m in c.d]
    if at == "generic":
        return [generic_rank(m) for m in c.d]
    raise ValueError(f"at must be 'origin' or 'generic', not {at!r}")


def fiber_cohomology_ranks(c: LogComplex, at: str = "origin") -> list[int]:
    """Cohomology ranks of the fibre at ``t = 0`` or over ``Q(t)``."""
    rk = _differential_ranks(c, at)
    out = []
    for i, r in enumerate(c.ranks):
        out.append(r - (rk[i] if i < len(rk) else 0) - (rk[i - 1] if i > 0 else 0))
    return out


def euler_characteristic(ranks: Sequence[int]) -> int:
    return sum((-1) ** i * r for i, r in enumerate(ranks))


def _column_basis(mat: linalg.Matrix, nrows: int) -> list[list[Fraction]]:
    """Basis of the column space of ``mat`` (given as rows)."""
    if not mat or not mat[0]:
        return []
    _, pivots = linalg.rref(mat, len(mat[0]))
    return [[row[p] for row in mat] for p in pivots]


def induced_on_origin_cohomology(c: LogComplex, action: Sequence[PolyMatrix]) -> list[linalg.Matrix]:
    """Matrices of a chain endomorphism (evaluated at ``t = 0``) on ``H^i`` of the fibre."""
    out = []
    d0 = [pm_eval0(m) for m in c.d]
    for i, r in enumerate(c.ranks):
        kernel = linalg.nullspace(d0[i], r) if i < len(d0) and c.ranks[i + 1] else \
            [[Fraction(int(a == b)) for a in range(r)] for b in range(r)]
        image = _column_basis(d0[i - 1], r) if i > 0 and c.ranks[i - 1] and r else []
        basis = list(image)
        complement = []
        for v in kernel:
            if not linalg.in_span(basis, v):
                basis.append(v)
                complement.append(v)
        k = len(complement)
        a0 = pm_eval0(action[i])
        cols = [list(col) for col in zip(*basis)] if basis else []
        mat = [[Fraction(0)] * k for _ in range(k)]
        for j, w in enumerate(complement):
            mw = [sum((a0[row][col] * w[col] for col in range(r)), Fraction(0)) for row in range(r)]
            coords = linalg.solve(cols, mw, len(basis))
            if coords is None:
                raise InvalidModelError(f"action does not preserve cycles in degree {i}")
            for row in range(k):
                mat[row][j] = coords[len(image) + row]
        out.append(mat)
    return out


@dataclass(frozen=True)
class HypothesisReport:
    m0_identity: bool
    residue_nilpotent: bool
    m0_induced: tuple
    residue_induced: tuple
    residue_charpolys: tuple
    residue_eigenvalues: tuple

    @property
    def ok(self) -> bool:
        return self.m0_identity and self.residue_nilpotent


def check_hypotheses(c: LogComplex) -> HypothesisReport:
    """Identity scalars and nilpotent residue on the cohomology of the origin fibre.

    Nilpotency is decided by the characteristic polynomial being ``x^n``.
    """
    m0 = induced_on_origin_cohomology(c, c.m0)
    res = induced_on_origin_cohomology(c, c.m1)
    m0_ok = all(m == linalg.identity(len(m)) for m in m0)
    polys = tuple(tuple(linalg.charpoly(m)) for m in res)
    nil_ok = all(all(x == 0 for x in p[1:]) for p in polys)
    eigs = tuple(tuple(linalg.rational_roots(p)) for p in polys)
    return HypothesisReport(m0_ok, nil_ok, tuple(map(_freeze, m0)), tuple(map(_freeze, res)),
                            polys, eigs)


def _freeze(m: linalg.Matrix):
    return tuple(tuple(r) for r in m)


@dataclass(frozen=True)
class Verdict:
    """``status`` is ``"PASS"``, ``"HYPOTHESIS_FAILED"`` or ``"THEOREM_VIOLATION"``."""

    status: str
    hypotheses: HypothesisReport
    origin_ranks: tuple[int, ...]
    generic_ranks: tuple[int, ...]
    reasons: tuple[str, ...] = ()

    @property
    def euler_constant(self) -> bool:
        return euler_characteristic(self.origin_ranks) == euler_characteristic(self.generic_ranks)


def verdict(c: LogComplex) -> Verdict:
    hyp = check_hypotheses(c)
    origin = tuple(fiber_cohomology_ranks(c, "origin"))
    generic = tuple(fiber_cohomology_ranks(c, "generic"))
    reasons = []
    if not hyp.m0_identity:
        bad = [i for i, m in enumerate(hyp.m0_induced) if [list(r) for r in m] != linalg.identity(len(m))]
        reasons.append(f"M0 is not the identity on H^{bad} of the origin fibre")
    if not hyp.residue_nilpotent:
        for i, (p, eig) in enumerate(zip(hyp.residue_charpolys, hyp.residue_eigenvalues)):
            if any(x != 0 for x in p[1:]):
                nz = [str(e) for e in eig if e != 0]
                reasons.append(f"residue on H^{i} is not nilpotent"
                               + (f" (eigenvalues {', '.join(nz)})" if nz else
                                  f" (char poly coefficients {[str(x) for x in p]})"))
    if reasons:
        if origin != generic:
            reasons.append(f"rank jump {list(origin)} -> {list(generic)}")
        return Verdict("HYPOTHESIS_FAILED", hyp, origin, generic, tuple(reasons))
    if origin != generic:
        return Verdict("THEOREM_VIOLATION", hyp, origin, generic,
                       (f"hypotheses hold but ranks jump {list(origin)} -> {list(generic)}",))
    return Verdict("PASS", hyp, origin, generic)


# -- random hypothesis-passing complexes ------------------------------------------------------


def _rand_q(rng: random.Random, lo: int = -3, hi: int = 3) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.choice((1, 1, 2, 3)))


def _const_matrix(rows: Sequence[Sequence[Fraction]]) -> PolyMatrix:
    return tuple(tuple(const(x) for x in r) for r in rows)


def _block_diag(blocks: Sequence[linalg.Matrix], offsets_r, offsets_c, nr, nc) -> linalg.Matrix:
    out = [[Fraction(0)] * nc for _ in range(nr)]
    for blk, r0, c0 in zip(blocks, offsets_r, offsets_c):
        for i, row in enumerate(blk):
            for j, x in enumerate(row):
                out[r0 + i][c0 + j] = x
    return out


def gauge(c_d, c_m1, g: Sequence[PolyMatrix], g_inv: Sequence[PolyMatrix]):
    """Change of frame ``x -> g_i x`` on each term: ``d -> g d g^{-1}`` and
    ``M1 -> g M1 g^{-1} - t g' g^{-1}``."""
    d = tuple(pm_mul(pm_mul(g[i + 1], m), g_inv[i]) for i, m in enumerate(c_d))
    m1 = tuple(pm_sub(pm_mul(pm_mul(g[i], m), g_inv[i]), pm_mul(pm_map(t_deriv, g[i]), g_inv[i]))
               for i, m in enumerate(c_m1))
    return d, m1


def random_split_complex(rng: random.Random, max_terms: int = 3, max_rank: int = 4,
                         max_N: int = 6, nilpotent: bool = True, name: Optional[str] = None) -> LogComplex:
    """A random complex with free cohomology and a compatible action.

    Built as a direct sum of acyclic pieces ``O --1--> O`` (any scalar
    residue) and cohomology pieces carrying a random residue (nilpotent when
    ``nilpotent`` is set), then scrambled by a constant change of basis and a
    unipotent polynomial gauge transformation of degree 1.
    """
    while True:
        nterms = rng.randint(1, max_terms)
        # pieces: ("acyclic", i) spans degrees i, i+1; ("h", i, k) a k-dim cohomology block
        ranks = [0] * nterms
        pieces = []
        for _ in range(rng.randint(1, 4)):
            i = rng.randrange(nterms)
            if i + 1 < nterms and rng.random() < 0.5:
                if ranks[i] < max_rank and ranks[i + 1] < max_rank:
                    pieces.append(("acyclic", i))
                    ranks[i] += 1
                    ranks[i + 1] += 1
            else:
                k = rng.randint(1, 2)
                if ranks[i] + k <= max_rank:
                    pieces.append(("h", i, k))
                    ranks[i] += k
        if sum(ranks):
            break
    d = [[[Fraction(0)] * ranks[i] for _ in range(ranks[i + 1])] for i in range(nterms - 1)]
    m1 = [[[Fraction(0)] * r for _ in range(r)] for r in ranks]
    fill = [0] * nterms
    for p in pieces:
        if p[0] == "acyclic":
            i = p[1]
            a, b = fill[i], fill[i + 1]
            d[i][b][a] = Fraction(1)
            s = _rand_q(rng)
            m1[i][a][a] = s
            m1[i + 1][b][b] = s
            fill[i] += 1
            fill[i + 1] += 1
        else:
            i, k = p[1], p[2]
            a = fill[i]
            for x in range(k):
                for y in range(k):
                    if nilpotent:
                        val = _rand_q(rng) if y > x else Fraction(0)
                    else:
                        val = _rand_q(rng)
                    m1[i][a + x][a + y] = val
            fill[i] += k
    # constant change of basis P_i (random invertible), then unipotent gauge I + t E
    g, g_inv = [], []
    for r in ranks:
        while True:
            P = [[_rand_q(rng, -2, 2) for _ in range(r)] for _ in range(r)]
            if linalg.rank(P) == r:
                break
        Pinv = _inverse(P)
        E = [[Fraction(0)] * r for _ in range(r)]
        if r >= 2 and rng.random() < 0.8:
            i, j = rng.sample(range(r), 2)
            E[i][j] = _rand_q(rng, -2, 2) or Fraction(1)
        U = tuple(tuple(padd(const(int(i == j)), pmul((Fraction(0), Fraction(1)), const(E[i][j])))
                        for j in range(r)) for i in range(r))
        U_inv = tuple(tuple(psub(const(int(i == j)), pmul((Fraction(0), Fraction(1)), const(E[i][j])))
                            for j in range(r)) for i in range(r))
        g.append(pm_mul(U, _const_matrix(P)))
        g_inv.append(pm_mul(_const_matrix(Pinv), U_inv))
    dd, mm1 = gauge(tuple(_const_matrix(x) for x in d), tuple(_const_matrix(x) for x in m1), g, g_inv)
    scalar = const(1) if rng.random() < 0.9 else const(2)
    if rng.random() < 0.3:
        scalar = padd(scalar, (Fraction(0), _rand_q(rng)))
    m0 = tuple(tuple(tuple(scalar if i == j else ZERO for j in range(r)) for i in range(r))
               for r in ranks)
    top = max((pm_maxdeg(m) for m in dd + mm1 + m0), default=0)
    N = rng.randint(max(top + 2, 2), max(top + 2, 2, max_N))
    return LogComplex(N, tuple(ranks), dd, m0, mm1, name=name)


def _inverse(a: linalg.Matrix) -> linalg.Matrix:
    n = len(a)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(a)]
    red, _ = linalg.rref(aug, 2 * n)
    return [row[n:] for row in red]
