"""Euler characteristics of curve fibrations ``q: P -> S`` in Chow models.

``chi(x) = q_*(x * td)`` realises the functional that turns the Chern
character of a sheaf on ``P`` into the Chern character of its derived direct
image.  On top of it sit the relative logarithmic de Rham Euler class and the
bookkeeping that splits an alternating Chern character into a constant part
plus a part supported on the marked sections.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .chow import ChowElement, ChowMap, ChowModel, exp_class, ideal_membership, mul
from .errors import InvalidModelError, ModelMismatchError, PreconditionError, SchemaError
from . import linalg


@dataclass(frozen=True)
class FamilyModel:
    """A semistable family of pointed curves over a base, as Chow data.

    ``pullback`` is ``q^*: CH(S) -> CH(P)``, ``pushforward`` is
    ``q_*: CH(P) -> CH(S)`` of degree ``-1``.  ``todd`` is the Todd class of
    the relative tangent complex and ``log_cotangent_c1`` the first Chern class
    of ``Omega^1_{P/S}(log D)``.  ``horizontal`` names the marked sections and
    ``vertical`` the fibre components over the discriminant; both are ids in
    the divisor registry of ``total``.
    """

    total: ChowModel
    base: ChowModel
    pullback: ChowMap
    pushforward: ChowMap
    todd: ChowElement
    log_cotangent_c1: ChowElement
    horizontal: tuple[str, ...] = ()
    vertical: tuple[str, ...] = ()
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "horizontal", tuple(self.horizontal))
        object.__setattr__(self, "vertical", tuple(self.vertical))
        validate_family(self)

    def section(self, cid: str) -> ChowElement:
        return self.total.divisors[cid]


def validate_family(fam: FamilyModel) -> None:
    """Load-time checks; raises :class:`InvalidModelError`."""
    P, S = fam.total, fam.base
    if fam.pullback.kind != "pullback" or fam.pullback.source is not S or fam.pullback.target is not P:
        raise InvalidModelError("pullback must be a ring map CH(S) -> CH(P)")
    q = fam.pushforward
    if q.kind != "pushforward" or q.source is not P or q.target is not S or q.shift != 1:
        raise InvalidModelError("pushforward must be CH(P) -> CH(S) of degree -1")
    for el, what in ((fam.todd, "todd"), (fam.log_cotangent_c1, "log cotangent class")):
        if el.model is not P:
            raise ModelMismatchError(f"{what} is not in the total-space model")
    if fam.todd.degree0 != 1:
        raise InvalidModelError("relative Todd class must have degree-0 part 1")
    c = fam.log_cotangent_c1
    if c != c.graded_part(1):
        raise InvalidModelError("log cotangent class must be pure degree 1")
    overlap = set(fam.horizontal) & set(fam.vertical)
    if overlap:
        raise InvalidModelError(f"components both horizontal and vertical: {sorted(overlap)}")
    for cid in fam.horizontal + fam.vertical:
        if cid not in P.divisors:
            raise InvalidModelError(f"{cid!r} is not in the total-space divisor registry")
    if not q.apply(P.one()).is_zero():
        raise InvalidModelError("pushforward must kill degree 0")
    for a, b in itertools.product(P.labels, S.labels):
        x, y = P.gen(a), S.gen(b)
        lhs = q.apply(mul(x, fam.pullback.apply(y)))
        rhs = mul(q.apply(x), y)
        if lhs != rhs:
            raise InvalidModelError(
                f"projection formula fails on ({a}, {b}): q_*({a} q^*{b}) = {lhs!r}, "
                f"q_*({a}) {b} = {rhs!r}")


def chi(fam: FamilyModel, x: ChowElement) -> ChowElement:
    """``q_*(x * td)``; the Chern character of ``Rq_*`` of a sheaf with ``ch = x``."""
    if x.model is not fam.total:
        raise ModelMismatchError("class does not live on the total space")
    return fam.pushforward.apply(mul(x, fam.todd))


def de_rham_factor(fam: FamilyModel) -> ChowElement:
    """``ch(O) - ch(Omega^1_{P/S}(log D)) = 1 - exp(c1)``."""
    return fam.total.one() - exp_class(fam.log_cotangent_c1)


def log_de_rham_euler(fam: FamilyModel, E: ChowElement) -> ChowElement:
    """Alternating Chern character of relative log de Rham cohomology of ``E``."""
    if E.model is not fam.total:
        raise ModelMismatchError("class does not live on the total space")
    return chi(fam, mul(E, de_rham_factor(fam)))


def residue_iso_check(fam: FamilyModel, cid: str) -> bool:
    """Chern-character shadow of ``Omega^1_{P/S}(log D)|_K = O_K`` on a section.

    True iff ``(exp(c1) - 1) * [K] = 0`` in the total space.
    """
    if cid in fam.vertical:
        raise PreconditionError(f"{cid!r} is a vertical component")
    if cid not in fam.horizontal:
        raise PreconditionError(f"{cid!r} is not a horizontal component")
    return mul(exp_class(fam.log_cotangent_c1) - 1, fam.section(cid)).is_zero()


@dataclass(frozen=True)
class SplitKR:
    r: Fraction
    k: ChowElement
    k_supported: bool


def split_kr(fam: FamilyModel, x: ChowElement) -> SplitKR:
    """Write ``x = r + k`` with ``r`` the degree-0 part.

    ``k_supported`` records whether ``k`` lies in the ideal of the sections.
    """
    if x.model is not fam.total:
        raise ModelMismatchError("class does not live on the total space")
    r = x.degree0
    k = x - r
    return SplitKR(r, k, ideal_membership(k, fam.horizontal))


@dataclass(frozen=True)
class MainIdentityResult:
    """Outcome of :func:`main_identity`.

    ``status`` is ``"PASS"``, ``"PRECONDITION_FAILED"`` or
    ``"THEOREM_VIOLATION"``.  ``expected`` is ``r * log_de_rham_euler(1)``,
    the constant the result must equal when the first piece vanishes.
    """

    result: ChowElement
    in_ch0: bool
    preconditions_ok: bool
    status: str
    split: SplitKR
    expected: Optional[ChowElement] = None
    failure: Optional[str] = None


def main_identity(fam: FamilyModel, E: ChowElement) -> MainIdentityResult:
    result = log_de_rham_euler(fam, E)
    split = split_kr(fam, E)
    bad = [cid for cid in fam.horizontal if not residue_iso_check(fam, cid)]
    failure = None
    if bad:
        failure = f"residue isomorphism fails on sections {bad}"
    elif not split.k_supported:
        failure = f"non-constant part {split.k!r} is not supported on the sections"
    in_ch0 = result.in_ch0()
    if failure:
        return MainIdentityResult(result, in_ch0, False, "PRECONDITION_FAILED", split,
                                  failure=failure)
    expected = split.r * log_de_rham_euler(fam, fam.total.one())
    ok = in_ch0 and result == expected
    status = "PASS" if ok else "THEOREM_VIOLATION"
    return MainIdentityResult(result, in_ch0, True, status, split, expected,
                              None if ok else "result is not the expected constant")


# -- JSON -------------------------------------------------------------------------------


def family_to_dict(fam: FamilyModel) -> dict:
    return {
        "name": fam.name,
        "total": fam.total.name,
        "base": fam.base.name,
        "pullback": {lab: img.to_dict() for lab in fam.base.labels
                     if (img := fam.pullback.image(lab)) and lab != "1"},
        "pushforward": {lab: img.to_dict() for lab in fam.total.labels
                        if (img := fam.pushforward.image(lab))},
        "todd": fam.todd.to_dict(),
        "log_cotangent": fam.log_cotangent_c1.to_dict(),
        "horizontal": list(fam.horizontal),
        "vertical": list(fam.vertical),
    }


def family_from_dict(data, models: Mapping[str, ChowModel], source: Optional[str] = None) -> FamilyModel:
    """Build a family whose ``total``/``base`` are names in ``models`` or inline models."""
    def fail(path, msg):
        raise SchemaError(msg, path, source)

    if not isinstance(data, Mapping):
        fail("$", "a family must be a JSON object")

    def model(key):
        ref = data.get(key)
        if isinstance(ref, str):
            if ref not in models:
                fail(f"$.{key}", f"unknown model {ref!r}")
            return models[ref]
        if isinstance(ref, Mapping):
            return ChowModel.from_dict(ref, source)
        fail(f"$.{key}", "must be a model name or an inline model")

    P, S = model("total"), model("base")

    def elem(m, raw, path):
        if not isinstance(raw, Mapping):
            fail(path, "must map basis labels to rationals")
        try:
            return m.element({k: linalg.to_fraction(v) for k, v in raw.items()})
        except (KeyError, TypeError, ValueError) as exc:
            fail(path, str(exc))

    for key in ("pullback", "pushforward", "todd", "log_cotangent"):
        if key not in data:
            fail("$", f"missing key {key!r}")
    pull_imgs = {lab: elem(P, v, f"$.pullback.{lab}") for lab, v in data["pullback"].items()}
    push_imgs = {lab: elem(S, v, f"$.pushforward.{lab}") for lab, v in data["pushforward"].items()}
    try:
        pull = ChowMap(S, P, pull_imgs, kind="pullback")
        push = ChowMap(P, S, push_imgs, kind="pushforward", shift=1)
        return FamilyModel(P, S, pull, push, elem(P, data["todd"], "$.todd"),
                           elem(P, data["log_cotangent"], "$.log_cotangent"),
                           tuple(data.get("horizontal", ())), tuple(data.get("vertical", ())),
                           name=data.get("name"))
    except (InvalidModelError, ModelMismatchError) as exc:
        fail("$", str(exc))
