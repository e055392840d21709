"""Finite graded commutative Q-algebras given by structure constants.

A :class:`ChowModel` stands in for the rational Chow ring of a smooth
projective variety.  The ring is described by an explicit basis in each
codimension ``0..d`` and a multiplication table; products landing above
degree ``d`` vanish.  Elements are immutable coordinate vectors with exact
:class:`~fractions.Fraction` entries.

>>> P2 = projective_space(2)
>>> h = P2.gen("h")
>>> (1 + h) * (1 + h)
1 + 2*h + h^2
>>> exp_class(2 * h)
1 + 2*h + 2*h^2
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from numbers import Rational
from typing import Iterable, Mapping, Optional, Sequence, Union

from . import linalg
from .errors import InvalidModelError, ModelMismatchError, PreconditionError, SchemaError

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of :func:`validate_model`.

    ``axiom`` names the first violated law (``"associativity"``,
    ``"commutativity"`` or ``"unit"``) and ``labels`` the basis elements
    witnessing it.
    """

    ok: bool
    axiom: Optional[str] = None
    labels: tuple[str, ...] = ()
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


class ChowModel:
    """A graded commutative Q-algebra ``A^0 + ... + A^d`` with ``A^0 = Q``.

    Parameters
    ----------
    dimension:
        Top degree ``d``.
    basis:
        ``basis[k]`` lists the labels of the degree-``k`` basis.  ``basis[0]``
        must be ``["1"]``.
    products:
        Mapping ``(a, b) -> {label: coefficient}`` for basis labels with
        ``deg a + deg b <= d``.  A product given in one order is mirrored to the
        other unless that slot is given too.  Unit products default to the
        identity; unlisted products are zero.
    divisors:
        Named degree-1 classes usable as divisor components.  Either a list of
        basis labels or a mapping ``name -> {label: coefficient}``.
    validate:
        Run the exhaustive ring-axiom check and raise
        :class:`InvalidModelError` on failure.
    """

    def __init__(self, dimension: int, basis: Sequence[Sequence[str]],
                 products: Mapping[tuple[str, str], Mapping[str, Scalar]] = (),
                 divisors=None, name: Optional[str] = None, validate: bool = True):
        if dimension < 0:
            raise InvalidModelError("dimension must be non-negative")
        if len(basis) != dimension + 1:
            raise InvalidModelError(
                f"need a basis list for each degree 0..{dimension}, got {len(basis)}")
        if list(basis[0]) != ["1"]:
            raise InvalidModelError('degree-0 basis must be exactly ["1"]')
        self.name = name
        self.dimension = dimension
        self.basis: tuple[tuple[str, ...], ...] = tuple(tuple(b) for b in basis)
        self.labels: tuple[str, ...] = tuple(itertools.chain.from_iterable(self.basis))
        if len(set(self.labels)) != len(self.labels):
            raise InvalidModelError("basis labels must be unique")
        self.offsets: tuple[int, ...] = tuple(
            itertools.accumulate((len(b) for b in self.basis), initial=0))
        self.size = self.offsets[-1]
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self.degrees: tuple[int, ...] = tuple(
            k for k, b in enumerate(self.basis) for _ in b)
        self._table = self._build_table(products)
        self.divisors: dict[str, ChowElement] = {}
        self._load_divisors(divisors)
        if validate:
            report = validate_model(self)
            if not report.ok:
                raise InvalidModelError(
                    f"invalid Chow model {name or ''}: {report.axiom} fails at "
                    f"{report.labels} ({report.detail})", report)

    # -- construction helpers -------------------------------------------------

    def _build_table(self, products) -> dict[tuple[int, int], tuple[Fraction, ...]]:
        explicit: dict[tuple[int, int], tuple[Fraction, ...]] = {}
        items = products.items() if isinstance(products, Mapping) else products
        for (a, b), result in items:
            for lab in (a, b):
                if lab not in self.index:
                    raise InvalidModelError(f"unknown basis label {lab!r} in products")
            ia, ib = self.index[a], self.index[b]
            deg = self.degrees[ia] + self.degrees[ib]
            if deg > self.dimension:
                raise InvalidModelError(
                    f"product {a}*{b} has degree {deg} > dimension {self.dimension}")
            vec = [Fraction(0)] * self.size
            for lab, c in result.items():
                if lab not in self.index:
                    raise InvalidModelError(f"unknown basis label {lab!r} in product {a}*{b}")
                if self.degrees[self.index[lab]] != deg:
                    raise InvalidModelError(
                        f"product {a}*{b} must land in degree {deg}, {lab!r} does not")
                vec[self.index[lab]] += linalg.to_fraction(c)
            explicit[(ia, ib)] = tuple(vec)
        table = {}
        for ia in range(self.size):
            for ib in range(self.size):
                if self.degrees[ia] + self.degrees[ib] > self.dimension:
                    continue
                if (ia, ib) in explicit:
                    table[(ia, ib)] = explicit[(ia, ib)]
                elif ia == 0 or ib == 0:
                    table[(ia, ib)] = self._unit_vector(ib if ia == 0 else ia)
                elif (ib, ia) in explicit:
                    table[(ia, ib)] = explicit[(ib, ia)]
                else:
                    table[(ia, ib)] = (Fraction(0),) * self.size
        # sparse form used by the multiplication loop
        return {k: tuple((i, c) for i, c in enumerate(v) if c) for k, v in table.items()}

    def _unit_vector(self, i: int) -> tuple[Fraction, ...]:
        return tuple(Fraction(int(j == i)) for j in range(self.size))

    def _load_divisors(self, divisors) -> None:
        if divisors is None:
            return
        if isinstance(divisors, Mapping):
            items = divisors.items()
        else:
            items = ((lab, {lab: 1}) for lab in divisors)
        for nm, cls in items:
            el = cls if isinstance(cls, ChowElement) else self.element(cls)
            if el.model is not self:
                raise ModelMismatchError(f"divisor {nm!r} lives in another model")
            if any(el.graded_part(k) for k in range(self.dimension + 1) if k != 1):
                raise InvalidModelError(f"divisor {nm!r} is not a degree-1 class")
            if nm in self.divisors:
                raise InvalidModelError(f"duplicate divisor name {nm!r}")
            self.divisors[nm] = el

    def with_divisors(self, divisors, name: Optional[str] = None) -> "ChowModel":
        """Same ring, different divisor registry (a fresh, independent model)."""
        raw = {}
        for (ia, ib), entries in self._table.items():
            if ia <= ib and ia and ib:
                raw[(self.labels[ia], self.labels[ib])] = {self.labels[i]: c for i, c in entries}
        return ChowModel(self.dimension, self.basis, raw, divisors,
                         name=name or self.name)

    # -- elements ---------------------------------------------------------------

    def element(self, coeffs: Optional[Mapping[str, Scalar]] = None) -> "ChowElement":
        vec = [Fraction(0)] * self.size
        for lab, c in (coeffs or {}).items():
            if lab not in self.index:
                raise KeyError(f"{lab!r} is not a basis label of {self}")
            vec[self.index[lab]] += linalg.to_fraction(c)
        return ChowElement(self, tuple(vec))

    def from_vector(self, vec: Sequence[Scalar]) -> "ChowElement":
        if len(vec) != self.size:
            raise ValueError(f"expected {self.size} coordinates, got {len(vec)}")
        return ChowElement(self, tuple(linalg.to_fraction(v) for v in vec))

    def one(self) -> "ChowElement":
        return ChowElement(self, self._unit_vector(0))

    def zero(self) -> "ChowElement":
        return ChowElement(self, (Fraction(0),) * self.size)

    def scalar(self, c: Scalar) -> "ChowElement":
        return linalg.to_fraction(c) * self.one()

    def gen(self, label: str) -> "ChowElement":
        return ChowElement(self, self._unit_vector(self.index[label]))

    def divisor(self, name: str) -> "ChowElement":
        return self.divisors[name]

    def basis_elements(self, degree: int) -> list["ChowElement"]:
        return [self.gen(lab) for lab in self.basis[degree]]

    # -- serialization -----------------------------------------------------------

    def to_dict(self) -> dict:
        products = []
        for (ia, ib), entries in sorted(self._table.items()):
            if ia == 0 or ib == 0 or ia > ib or not entries:
                continue
            products.append({
                "a": self.labels[ia], "b": self.labels[ib],
                "result": {self.labels[i]: linalg.format_fraction(c) for i, c in entries},
            })
        divisors = {nm: el.to_dict() for nm, el in self.divisors.items()}
        if all(len(d) == 1 and d.get(nm) == "1/1" for nm, d in divisors.items()):
            divisors = list(divisors)
        out = {"dimension": self.dimension, "basis": [list(b) for b in self.basis],
               "products": products, "divisors": divisors}
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_dict(cls, data, source: Optional[str] = None, validate: bool = True) -> "ChowModel":
        def fail(path, msg):
            raise SchemaError(msg, path, source)

        if not isinstance(data, Mapping):
            fail("$", "a Chow model must be a JSON object")
        for key in ("dimension", "basis"):
            if key not in data:
                fail("$", f"missing key {key!r}")
        dim = data["dimension"]
        if not isinstance(dim, int) or isinstance(dim, bool):
            fail("$.dimension", "must be an integer")
        basis = data["basis"]
        if not isinstance(basis, list) or not all(
                isinstance(b, list) and all(isinstance(x, str) for x in b) for b in basis):
            fail("$.basis", "must be a list of lists of labels")
        products = {}
        for i, entry in enumerate(data.get("products", [])):
            path = f"$.products[{i}]"
            if not isinstance(entry, Mapping) or not {"a", "b", "result"} <= set(entry):
                fail(path, "each product needs keys 'a', 'b', 'result'")
            if not isinstance(entry["result"], Mapping):
                fail(path + ".result", "must map labels to rationals")
            try:
                res = {k: linalg.to_fraction(v) for k, v in entry["result"].items()}
            except (TypeError, ValueError) as exc:
                fail(path + ".result", str(exc))
            products[(entry["a"], entry["b"])] = res
        divisors = data.get("divisors")
        if divisors is not None and not isinstance(divisors, (list, Mapping)):
            fail("$.divisors", "must be a list of labels or a name -> class mapping")
        try:
            return cls(dim, basis, products, divisors, name=data.get("name"), validate=validate)
        except (InvalidModelError, KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, SchemaError):
                raise
            fail("$.divisors" if isinstance(exc, TypeError) else "$", str(exc))

    def __repr__(self) -> str:
        nm = f" {self.name!r}" if self.name else ""
        return f"<ChowModel{nm} dim={self.dimension} basis={[list(b) for b in self.basis]}>"


class ChowElement:
    """An element of a :class:`ChowModel`; immutable and hashable."""

    __slots__ = ("model", "_v")

    def __init__(self, model: ChowModel, vec: tuple[Fraction, ...]):
        self.model = model
        self._v = vec

    # coordinates ---------------------------------------------------------------

    @property
    def vector(self) -> tuple[Fraction, ...]:
        return self._v

    @property
    def coords(self) -> tuple[tuple[Fraction, ...], ...]:
        """Coordinates grouped by degree."""
        o = self.model.offsets
        return tuple(self._v[o[k]:o[k + 1]] for k in range(self.model.dimension + 1))

    def __getitem__(self, label: str) -> Fraction:
        return self._v[self.model.index[label]]

    def to_dict(self) -> dict[str, str]:
        return {lab: linalg.format_fraction(c)
                for lab, c in zip(self.model.labels, self._v) if c}

    def terms(self) -> dict[str, Fraction]:
        return {lab: c for lab, c in zip(self.model.labels, self._v) if c}

    # arithmetic ------------------------------------------------------------------

    def _coerce(self, other) -> "ChowElement":
        if isinstance(other, ChowElement):
            if other.model is not self.model:
                raise ModelMismatchError("elements belong to different Chow models")
            return other
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return self.model.scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ChowElement(self.model, tuple(a + b for a, b in zip(self._v, o._v)))

    __radd__ = __add__

    def __neg__(self):
        return ChowElement(self.model, tuple(-a for a in self._v))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ChowElement(self.model, tuple(a - b for a, b in zip(self._v, o._v)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            c = Fraction(other)
            return ChowElement(self.model, tuple(c * a for a in self._v))
        if isinstance(other, ChowElement):
            return mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = self.model.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, ChowElement):
            return self.model is other.model and self._v == other._v
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return self._v == self.model.scalar(other)._v
        return NotImplemented

    def __hash__(self):
        return hash((id(self.model), self._v))

    def __bool__(self) -> bool:
        return any(self._v)

    def is_zero(self) -> bool:
        return not any(self._v)

    # graded structure ---------------------------------------------------------------

    def graded_part(self, k: int) -> "ChowElement":
        return graded_part(self, k)

    @property
    def degree0(self) -> Fraction:
        return self._v[0]

    def in_ch0(self) -> bool:
        """True iff every positive-degree component vanishes."""
        return not any(self._v[1:])

    def exp(self) -> "ChowElement":
        return exp_class(self)

    def __repr__(self) -> str:
        parts = []
        for lab, c in zip(self.model.labels, self._v):
            if not c:
                continue
            name = lab
            if lab == "1":
                term = str(c)
            elif c == 1:
                term = name
            elif c == -1:
                term = "-" + name
            else:
                term = f"{c}*{name}" if c.denominator == 1 else f"({c})*{name}"
            parts.append(term)
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


# -- operations ----------------------------------------------------------------------


def validate_model(m: ChowModel) -> ValidationReport:
    """Exhaustively check associativity, commutativity and the unit law.

    Checks run in that order, each over basis tuples in basis order, and the
    first failure is reported.
    """
    labels = m.labels
    n = m.size

    basis_vecs = [m.gen(lab) for lab in labels]
    for ia, ib, ic in itertools.product(range(n), repeat=3):
        if m.degrees[ia] + m.degrees[ib] + m.degrees[ic] > m.dimension:
            continue
        a, b, c = basis_vecs[ia], basis_vecs[ib], basis_vecs[ic]
        left, right = mul(mul(a, b), c), mul(a, mul(b, c))
        if left != right:
            return ValidationReport(False, "associativity", (labels[ia], labels[ib], labels[ic]),
                                    f"({labels[ia]}*{labels[ib]})*{labels[ic]} = {left!r} but "
                                    f"{labels[ia]}*({labels[ib]}*{labels[ic]}) = {right!r}")
    for ia, ib in itertools.combinations(range(n), 2):
        if m.degrees[ia] + m.degrees[ib] > m.dimension:
            continue
        ab, ba = mul(basis_vecs[ia], basis_vecs[ib]), mul(basis_vecs[ib], basis_vecs[ia])
        if ab != ba:
            return ValidationReport(False, "commutativity", (labels[ia], labels[ib]),
                                    f"{labels[ia]}*{labels[ib]} = {ab!r} but "
                                    f"{labels[ib]}*{labels[ia]} = {ba!r}")
    for i in range(n):
        x = basis_vecs[i]
        if mul(basis_vecs[0], x) != x or mul(x, basis_vecs[0]) != x:
            return ValidationReport(False, "unit", ("1", labels[i]),
                                    f"1*{labels[i]} != {labels[i]}")
    return ValidationReport(True)


def mul(x: ChowElement, y: ChowElement) -> ChowElement:
    """Product in the model; components above the top degree are dropped."""
    if x.model is not y.model:
        raise ModelMismatchError("elements belong to different Chow models")
    m = x.model
    out = [Fraction(0)] * m.size
    table = m._table
    yv = [(j, b) for j, b in enumerate(y._v) if b]
    for i, a in enumerate(x._v):
        if not a:
            continue
        for j, b in yv:
            entries = table.get((i, j))
            if not entries:
                continue
            ab = a * b
            for k, c in entries:
                out[k] += ab * c
    return ChowElement(m, tuple(out))


def exp_class(x: ChowElement) -> ChowElement:
    """Truncated exponential ``sum_{k<=d} x^k / k!`` of a positive-degree class."""
    if x.degree0:
        raise PreconditionError("exp_class needs an element with zero degree-0 part")
    m = x.model
    out = m.one()
    power = m.one()
    for k in range(1, m.dimension + 1):
        power = mul(power, x)
        if power.is_zero():
            break
        out = out + power * Fraction(1, factorial(k))
    return out


def graded_part(x: ChowElement, k: int) -> ChowElement:
    m = x.model
    if not 0 <= k <= m.dimension:
        raise PreconditionError(f"degree {k} outside 0..{m.dimension}")
    lo, hi = m.offsets[k], m.offsets[k + 1]
    return ChowElement(m, tuple(c if lo <= i < hi else Fraction(0) for i, c in enumerate(x._v)))


def _resolve_components(m: ChowModel, components) -> list[ChowElement]:
    out = []
    for comp in components:
        if isinstance(comp, str):
            if comp not in m.divisors:
                raise KeyError(f"{comp!r} is not in the divisor registry")
            comp = m.divisors[comp]
        if comp.model is not m:
            raise ModelMismatchError("component class lives in another model")
        out.append(comp)
    return out


def ideal_membership(x: ChowElement, components: Iterable) -> bool:
    """Is ``x`` in the ideal generated by the given degree-1 classes?

    Decided degree by degree: the degree-``k`` part of ``x`` must lie in the
    span of ``D * b`` for the components ``D`` and basis elements ``b`` of
    degree ``k - 1``.  A nonzero degree-0 part is never a member.
    """
    m = x.model
    comps = _resolve_components(m, components)
    if x.degree0:
        return False
    for k in range(1, m.dimension + 1):
        lo, hi = m.offsets[k], m.offsets[k + 1]
        target = x._v[lo:hi]
        if not any(target):
            continue
        span = [mul(d, b)._v[lo:hi] for d in comps for b in m.basis_elements(k - 1)]
        if not linalg.in_span(span, target):
            return False
    return True


class ChowMap:
    """A linear map between Chow models.

    ``kind="pullback"``: a degree-preserving ring homomorphism ``source -> target``.
    Images of degree-1 labels suffice when the source is generated in degree
    one; multiplicativity is checked on all basis pairs at construction.

    ``kind="pushforward"``: an additive map lowering degree by ``shift``
    (the relative dimension).
    """

    def __init__(self, source: ChowModel, target: ChowModel,
                 images: Mapping[str, Union[ChowElement, Mapping[str, Scalar]]],
                 kind: str = "pullback", shift: int = 0, validate: bool = True):
        if kind not in ("pullback", "pushforward"):
            raise ValueError(f"unknown map kind {kind!r}")
        self.source, self.target, self.kind = source, target, kind
        self.shift = 0 if kind == "pullback" else shift
        imgs: dict[str, ChowElement] = {}
        for lab, img in images.items():
            if lab not in source.index:
                raise InvalidModelError(f"{lab!r} is not a basis label of the source")
            el = img if isinstance(img, ChowElement) else target.element(img)
            if el.model is not target:
                raise ModelMismatchError(f"image of {lab!r} is not in the target model")
            imgs[lab] = el
        if kind == "pullback":
            imgs.setdefault("1", target.one())
            self._complete_pullback(imgs)
        self._images = tuple(imgs.get(lab, target.zero()) for lab in source.labels)
        self._check_degrees()
        if validate and kind == "pullback":
            self._validate_multiplicative()

    @classmethod
    def identity(cls, model: ChowModel) -> "ChowMap":
        return cls(model, model, {lab: model.gen(lab) for lab in model.labels})

    def _complete_pullback(self, imgs: dict[str, ChowElement]) -> None:
        src = self.source
        for k in range(2, src.dimension + 1):
            missing = [lab for lab in src.basis[k] if lab not in imgs]
            if not missing:
                continue
            pairs = [(g, b) for g in src.basis[1] for b in src.basis[k - 1]]
            lo, hi = src.offsets[k], src.offsets[k + 1]
            cols = [mul(src.gen(g), src.gen(b))._v[lo:hi] for g, b in pairs]
            rows = [list(r) for r in zip(*cols)]
            for lab in missing:
                rhs = src.gen(lab)._v[lo:hi]
                coeffs = linalg.solve(rows, rhs, len(pairs))
                if coeffs is None:
                    raise InvalidModelError(
                        f"source is not generated in degree 1 at {lab!r}; supply its image")
                img = self.target.zero()
                for c, (g, b) in zip(coeffs, pairs):
                    if c:
                        img = img + c * mul(imgs[g], imgs[b])
                imgs[lab] = img

    def _check_degrees(self) -> None:
        for lab, img in zip(self.source.labels, self._images):
            if img.is_zero():
                continue
            want = self.source.degrees[self.source.index[lab]] - self.shift
            if want < 0 or want > self.target.dimension or img != graded_part(img, want):
                raise InvalidModelError(
                    f"image of {lab!r} must be homogeneous of degree {want}")

    def _validate_multiplicative(self) -> None:
        src = self.source
        if self._images[0] != self.target.one():
            raise InvalidModelError("pullback must send 1 to 1")
        for ia, ib in itertools.combinations_with_replacement(range(src.size), 2):
            if src.degrees[ia] + src.degrees[ib] > src.dimension:
                continue
            a, b = src.labels[ia], src.labels[ib]
            lhs = self.apply(mul(src.gen(a), src.gen(b)))
            rhs = mul(self._images[ia], self._images[ib])
            if lhs != rhs:
                raise InvalidModelError(
                    f"pullback is not multiplicative on ({a}, {b}): {lhs!r} != {rhs!r}")

    def image(self, label: str) -> ChowElement:
        return self._images[self.source.index[label]]

    def apply(self, x: ChowElement) -> ChowElement:
        if x.model is not self.source:
            raise ModelMismatchError("element is not in the source model of the map")
        out = [Fraction(0)] * self.target.size
        for c, img in zip(x._v, self._images):
            if c:
                for i, v in enumerate(img._v):
                    if v:
                        out[i] += c * v
        return ChowElement(self.target, tuple(out))

    __call__ = apply

    def to_dict(self) -> dict:
        return {"kind": self.kind, "shift": self.shift,
                "images": {lab: img.to_dict()
                           for lab, img in zip(self.source.labels, self._images) if img}}


def apply_map(f: ChowMap, x: ChowElement) -> ChowElement:
    return f.apply(x)


# -- small constructors used by the corpus and the tests ----------------------------------


def projective_space(n: int, name: Optional[str] = None, divisors=None) -> ChowModel:
    """``Q[h]/(h^{n+1})`` with basis labels ``1, h, h^2, ..., h^n``."""
    labels = ["1"] + ["h" if k == 1 else f"h^{k}" for k in range(1, n + 1)]
    products = {}
    for i in range(1, n + 1):
        for j in range(i, n - i + 1):
            products[(labels[i], labels[j])] = {labels[i + j]: 1}
    return ChowModel(n, [[lab] for lab in labels], products, divisors,
                     name=name or f"P{n}")
