"""Locally abelian parabolic bundles as K-classes of parabolic line bundles.

A parabolic line bundle ``L(B)`` is a line bundle ``L`` (recorded by its first
Chern class) together with a rational divisor ``B = sum b_i D_i`` supported on
a normal crossings divisor.  Its filtered pieces are

    L(B)_beta = L(sum floor(b_i + beta_i) D_i),

so the jumps along ``D_i`` sit at ``beta_i = -b_i (mod 1)``; those residues in
``[0, 1)`` are the weights.  A locally abelian parabolic bundle is handled
through its K-class, a formal integer combination of such line bundles, and
its parabolic Chern character is ``sum m * exp(c1 + B)``.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

from . import linalg
from .chow import ChowElement, ChowMap, ChowModel, exp_class, ideal_membership
from .errors import InvalidModelError, ModelMismatchError, SchemaError

Scalar = Union[int, Fraction, str]


def frac(q: Fraction) -> Fraction:
    """Fractional part in ``[0, 1)``."""
    return q - math.floor(q)


@dataclass(frozen=True)
class NormalCrossingsDivisor:
    """Ordered components ``(id, degree-1 class)`` inside one Chow model."""

    model: ChowModel
    components: tuple[tuple[str, ChowElement], ...]

    def __post_init__(self):
        ids = [cid for cid, _ in self.components]
        if len(set(ids)) != len(ids):
            raise InvalidModelError("component ids must be unique")
        for cid, cls in self.components:
            if cls.model is not self.model:
                raise ModelMismatchError(f"component {cid!r} lives in another model")

    @classmethod
    def from_registry(cls, model: ChowModel, ids: Optional[Iterable[str]] = None):
        """Use (some of) the model's registered divisors as components."""
        ids = list(model.divisors) if ids is None else list(ids)
        missing = [i for i in ids if i not in model.divisors]
        if missing:
            raise KeyError(f"not in the divisor registry: {missing}")
        return cls(model, tuple((i, model.divisors[i]) for i in ids))

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(cid for cid, _ in self.components)

    def class_of(self, cid: str) -> ChowElement:
        for i, cls in self.components:
            if i == cid:
                return cls
        raise KeyError(f"{cid!r} is not a component of this divisor")

    def __contains__(self, cid) -> bool:
        return cid in self.ids

    def __hash__(self):
        return hash((id(self.model), self.components))


class _RationalMap:
    """Finitely supported map ``component id -> Fraction``; zeros are dropped."""

    __slots__ = ("_items",)

    def __init__(self, entries: Optional[Mapping[str, Scalar]] = None):
        items = {}
        for k, v in (entries or {}).items():
            q = linalg.to_fraction(v)
            if q:
                items[k] = q
        self._items = tuple(sorted(items.items()))

    def __getitem__(self, cid: str) -> Fraction:
        for k, v in self._items:
            if k == cid:
                return v
        return Fraction(0)

    get = __getitem__

    def items(self):
        return self._items

    def support(self) -> tuple[str, ...]:
        return tuple(k for k, _ in self._items)

    def as_dict(self) -> dict[str, Fraction]:
        return dict(self._items)

    def __add__(self, other):
        out = self.as_dict()
        for k, v in other.items():
            out[k] = out.get(k, 0) + v
        return type(self)(out)

    def __neg__(self):
        return type(self)({k: -v for k, v in self._items})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "_RationalMap":
        return type(self)({k: c * v for k, v in self._items})

    def __eq__(self, other):
        return type(self) is type(other) and self._items == other._items

    def __hash__(self):
        return hash((type(self).__name__, self._items))

    def __bool__(self):
        return bool(self._items)

    def __repr__(self):
        body = ", ".join(f"{k}: {v}" for k, v in self._items)
        return f"{type(self).__name__}({{{body}}})"


class RationalDivisor(_RationalMap):
    """``B = sum b_i D_i`` with rational ``b_i``."""

    def to_dict(self) -> dict[str, str]:
        return {k: linalg.format_fraction(v) for k, v in self._items}

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for _, v in self._items)


class MultiIndex(_RationalMap):
    """A multi-index ``alpha``; unnamed components default to 0."""

    @classmethod
    def delta(cls, cid: str) -> "MultiIndex":
        return cls({cid: 1})


@dataclass(frozen=True)
class ParabolicLineBundle:
    c1: ChowElement
    twist: RationalDivisor = field(default_factory=RationalDivisor)

    def __post_init__(self):
        m = self.c1.model
        if any(self.c1.graded_part(k) for k in range(m.dimension + 1) if k != 1):
            raise InvalidModelError("c1 of a line bundle must be a pure degree-1 class")


@dataclass(frozen=True)
class ParabolicKClass:
    """A formal sum ``sum m_j L_j(B_j)`` over a fixed divisor.

    Terms are stored exactly as given; nothing is merged.  Use
    :func:`normal_form` / :func:`k_equal` to compare classes.
    """

    divisor: NormalCrossingsDivisor
    terms: tuple[tuple[int, ParabolicLineBundle], ...] = ()

    def __post_init__(self):
        ids = set(self.divisor.ids)
        for mult, lb in self.terms:
            if not isinstance(mult, int) or isinstance(mult, bool):
                raise TypeError("multiplicities must be integers")
            if lb.c1.model is not self.divisor.model:
                raise ModelMismatchError("term lives in another Chow model")
            extra = set(lb.twist.support()) - ids
            if extra:
                raise InvalidModelError(f"twist supported off the divisor: {sorted(extra)}")

    @property
    def model(self) -> ChowModel:
        return self.divisor.model

    @property
    def rank(self) -> int:
        return sum(m for m, _ in self.terms)

    def _check(self, other: "ParabolicKClass") -> None:
        if self.divisor != other.divisor:
            raise ModelMismatchError("K-classes live over different divisors")

    def __add__(self, other: "ParabolicKClass") -> "ParabolicKClass":
        """Direct sum: concatenation of term lists."""
        self._check(other)
        return ParabolicKClass(self.divisor, self.terms + other.terms)

    def __neg__(self) -> "ParabolicKClass":
        return ParabolicKClass(self.divisor, tuple((-m, lb) for m, lb in self.terms))

    def __sub__(self, other: "ParabolicKClass") -> "ParabolicKClass":
        return self + (-other)

    def scaled(self, k: int) -> "ParabolicKClass":
        return ParabolicKClass(self.divisor, tuple((k * m, lb) for m, lb in self.terms))

    def to_dict(self) -> dict:
        return {
            "model": self.model.name,
            "divisor": list(self.divisor.ids),
            "terms": [{"mult": m, "c1": lb.c1.to_dict(), "twist": lb.twist.to_dict()}
                      for m, lb in self.terms],
        }

    @classmethod
    def from_dict(cls, data, model: ChowModel, source: Optional[str] = None) -> "ParabolicKClass":
        def fail(path, msg):
            raise SchemaError(msg, path, source)

        if not isinstance(data, Mapping):
            fail("$", "a bundle must be a JSON object")
        ids = data.get("divisor", list(model.divisors))
        if not isinstance(ids, list):
            fail("$.divisor", "must be a list of component ids")
        try:
            divisor = NormalCrossingsDivisor.from_registry(model, ids)
        except KeyError as exc:
            fail("$.divisor", str(exc))
        terms = []
        raw_terms = data.get("terms")
        if not isinstance(raw_terms, list):
            fail("$.terms", "must be a list")
        for i, t in enumerate(raw_terms):
            path = f"$.terms[{i}]"
            if not isinstance(t, Mapping):
                fail(path, "must be an object")
            mult = t.get("mult", 1)
            if not isinstance(mult, int) or isinstance(mult, bool):
                fail(path + ".mult", "must be an integer")
            try:
                c1 = model.element(t.get("c1", {}))
            except (KeyError, TypeError, ValueError) as exc:
                fail(path + ".c1", str(exc))
            try:
                twist = RationalDivisor(t.get("twist", {}))
            except (TypeError, ValueError) as exc:
                fail(path + ".twist", str(exc))
            bad = set(twist.support()) - set(divisor.ids)
            if bad:
                fail(path + ".twist", f"components not in the divisor: {sorted(bad)}")
            try:
                terms.append((mult, ParabolicLineBundle(c1, twist)))
            except InvalidModelError as exc:
                fail(path + ".c1", str(exc))
        return cls(divisor, tuple(terms))

    def __repr__(self):
        parts = []
        for m, lb in self.terms:
            tw = " + ".join(f"{v}*{k}" for k, v in lb.twist.items())
            body = f"L[{lb.c1!r}]" + (f"({tw})" if tw else "")
            parts.append(body if m == 1 else f"{m}*{body}")
        return " (+) ".join(parts) if parts else "0"


# -- constructors --------------------------------------------------------------------


def line(divisor: NormalCrossingsDivisor, twist: Optional[Mapping[str, Scalar]] = None,
         c1: Optional[ChowElement] = None, mult: int = 1) -> ParabolicKClass:
    """The K-class of ``mult`` copies of ``L(B)``; ``c1`` defaults to 0."""
    c1 = divisor.model.zero() if c1 is None else c1
    return ParabolicKClass(divisor, ((mult, ParabolicLineBundle(c1, RationalDivisor(twist))),))


def trivial(divisor: NormalCrossingsDivisor, rank: int) -> ParabolicKClass:
    return line(divisor, mult=rank)


def direct_sum(*classes: ParabolicKClass) -> ParabolicKClass:
    out = classes[0]
    for c in classes[1:]:
        out = out + c
    return out


# -- operations ------------------------------------------------------------------------


def constituent(F: ParabolicKClass, beta: Optional[Mapping[str, Scalar]] = None) -> ParabolicKClass:
    """The ordinary bundle ``F_beta``: twists become ``floor(b_i + beta_i)``.

    Every component of the divisor is visited, so a trivial structure still
    picks up ``floor(beta_i) D_i``.
    """
    beta = beta if isinstance(beta, MultiIndex) else MultiIndex(beta)
    terms = []
    for mult, lb in F.terms:
        tw = {cid: math.floor(lb.twist[cid] + beta[cid]) for cid in F.divisor.ids}
        terms.append((mult, ParabolicLineBundle(lb.c1, RationalDivisor(tw))))
    return ParabolicKClass(F.divisor, tuple(terms))


def tensor_par(F: ParabolicKClass, G: ParabolicKClass) -> ParabolicKClass:
    F._check(G)
    terms = tuple((m * n, ParabolicLineBundle(a.c1 + b.c1, a.twist + b.twist))
                  for m, a in F.terms for n, b in G.terms)
    return ParabolicKClass(F.divisor, terms)


def twist_class(divisor: NormalCrossingsDivisor, twist: RationalDivisor) -> ChowElement:
    out = divisor.model.zero()
    for cid, b in twist.items():
        out = out + b * divisor.class_of(cid)
    return out


def ch_par(F: ParabolicKClass) -> ChowElement:
    """Parabolic Chern character ``sum m * exp(c1 + B)``."""
    out = F.model.zero()
    for mult, lb in F.terms:
        out = out + mult * exp_class(lb.c1 + twist_class(F.divisor, lb.twist))
    return out


def weights_along(F: ParabolicKClass, cid: str) -> Counter:
    """Weights along ``D_cid`` with multiplicity, as residues in ``[0, 1)``.

    ``L(b D)`` jumps at ``beta = -b (mod 1)``, so it contributes the weight
    ``frac(-b)``.
    """
    if cid not in F.divisor:
        raise KeyError(f"{cid!r} is not a component of the divisor")
    out: Counter = Counter()
    for mult, lb in F.terms:
        out[frac(-lb.twist[cid])] += mult
    return Counter({w: n for w, n in out.items() if n})


def normalize_line(divisor: NormalCrossingsDivisor, lb: ParabolicLineBundle) -> ParabolicLineBundle:
    """Move integral parts of the twist into ``c1`` so every ``b_i`` is in ``[0, 1)``.

    ``L(nD)(wD)`` and ``L((n+w)D)`` are the same parabolic line bundle.
    """
    c1 = lb.c1
    tw = {}
    for cid, b in lb.twist.items():
        n = math.floor(b)
        if n:
            c1 = c1 + n * divisor.class_of(cid)
        tw[cid] = b - n
    return ParabolicLineBundle(c1, RationalDivisor(tw))


def normal_form(F: ParabolicKClass) -> Counter:
    """Term multiset of normalized line bundles, zero multiplicities dropped."""
    out: Counter = Counter()
    for mult, lb in F.terms:
        out[normalize_line(F.divisor, lb)] += mult
    return Counter({k: v for k, v in out.items() if v})


def k_equal(F: ParabolicKClass, G: ParabolicKClass) -> bool:
    """Equality in K_0 of the free abelian group on parabolic line bundles.

    This is deliberately finer than equality of Chern characters.
    """
    F._check(G)
    return normal_form(F) == normal_form(G)


@dataclass(frozen=True)
class DiffOverD:
    difference: ChowElement
    supported_on_d: bool


def diff_over_d(F: ParabolicKClass, alpha: Optional[Mapping[str, Scalar]] = None) -> DiffOverD:
    """``ch_par(F) - ch(F_alpha)`` and whether it lies in the ideal of ``D``."""
    diff = ch_par(F) - ch_par(constituent(F, alpha))
    comps = [cls for _, cls in F.divisor.components]
    return DiffOverD(diff, ideal_membership(diff, comps))


# -- pullback ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParabolicMorphism:
    """A morphism ``f: (X', D') -> (X, D)`` seen through its pullback data.

    ``ring_map`` is the pullback ``CH(X) -> CH(X')``; ``component_map`` sends
    each component of ``D`` to ``f^* D_i`` written as an integer combination
    of components of ``D'``.  Consistency with ``ring_map`` is checked.
    """

    ring_map: ChowMap
    divisor_down: NormalCrossingsDivisor
    divisor_up: NormalCrossingsDivisor
    component_map: Mapping[str, RationalDivisor]

    def __post_init__(self):
        f = self.ring_map
        if f.kind != "pullback":
            raise InvalidModelError("a parabolic pullback needs a ring homomorphism")
        if f.source is not self.divisor_down.model or f.target is not self.divisor_up.model:
            raise ModelMismatchError("ring map does not match the two divisors' models")
        cmap = {}
        for cid in self.divisor_down.ids:
            img = self.component_map.get(cid, RationalDivisor())
            img = img if isinstance(img, RationalDivisor) else RationalDivisor(img)
            if not img.is_integral():
                raise InvalidModelError(f"f^*({cid}) must have integer coefficients")
            extra = set(img.support()) - set(self.divisor_up.ids)
            if extra:
                raise InvalidModelError(f"f^*({cid}) uses unknown components {sorted(extra)}")
            lhs = f.apply(self.divisor_down.class_of(cid))
            rhs = twist_class(self.divisor_up, img)
            if lhs != rhs:
                raise InvalidModelError(
                    f"component map inconsistent with the ring map on {cid}: "
                    f"f^*[{cid}] = {lhs!r} but the map gives {rhs!r}")
            cmap[cid] = img
        object.__setattr__(self, "component_map", cmap)

    def pull_divisor(self, B: RationalDivisor) -> RationalDivisor:
        out = RationalDivisor()
        for cid, b in B.items():
            out = out + self.component_map[cid].scale(b)
        return out


def pullback_par(f: ParabolicMorphism, F: ParabolicKClass) -> ParabolicKClass:
    """Termwise ``f^*(L(B)) = (f^* L)(f^* B)``."""
    if F.divisor != f.divisor_down:
        raise ModelMismatchError("K-class does not live over the morphism's target divisor")
    terms = tuple((m, ParabolicLineBundle(f.ring_map.apply(lb.c1), f.pull_divisor(lb.twist)))
                  for m, lb in F.terms)
    return ParabolicKClass(f.divisor_up, terms)
