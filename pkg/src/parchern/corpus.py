"""Built-in geometries: Chow models, morphisms, curve families and complexes.

Every constructor builds fresh objects, so callers never share mutable state.
The derivations behind the numbers (blowup relations, canonical classes, Todd
classes) are written out in ``docs/corpus.md``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .chow import ChowMap, ChowModel, projective_space
from .grr import FamilyModel
from .parabolic import NormalCrossingsDivisor, ParabolicMorphism
from .steenbrink import LogComplex, pm, pm_identity

POINTED_CURVE_RANGE = range(2, 11)


# -- surfaces and curves -------------------------------------------------------------------


def p1(name: str = "P1", divisors=None) -> ChowModel:
    """``Q[pt]/(pt^2)``; by default the two marked points ``0`` and ``inf``."""
    divisors = {"0": {"pt": 1}, "inf": {"pt": 1}} if divisors is None else divisors
    return ChowModel(1, [["1"], ["pt"]], {}, divisors, name=name)


def p2() -> ChowModel:
    """``P^2`` with two lines ``L`` (through the point later blown up) and ``M``."""
    return projective_space(2, "P2", {"L": {"h": 1}, "M": {"h": 1}})


def p1xp1(name: str = "P1xP1", divisors=None) -> ChowModel:
    """``Q[s,h]/(s^2, h^2)``: ``s`` a fibre of the first projection, ``h`` of the second."""
    divisors = ["s", "h"] if divisors is None else divisors
    return ChowModel(2, [["1"], ["s", "h"], ["sh"]], {("s", "h"): {"sh": 1}}, divisors, name=name)


def blowup_p2() -> ChowModel:
    """``Bl_p P^2``: ``H^2 = pt``, ``E^2 = -pt``, ``HE = 0``.

    ``Lt`` is the strict transform ``H - E`` of a line through ``p``, ``Mt``
    a line missing ``p``.
    """
    return ChowModel(2, [["1"], ["H", "E"], ["pt"]],
                     {("H", "H"): {"pt": 1}, ("E", "E"): {"pt": -1}},
                     {"Lt": {"H": 1, "E": -1}, "E": {"E": 1}, "Mt": {"H": 1}},
                     name="BlP2")


def blowup_p1xp1() -> ChowModel:
    """``Bl_p(P^1 x P^1)`` at ``p = (0, 0)``, with ``s^2 = h^2 = 0``, ``sh = pt``,
    ``e^2 = -pt`` and ``se = he = 0``.

    The sections ``y = 0`` and ``y = x`` (classes ``h`` and ``s + h``) meet at
    ``p``; their strict transforms ``k1``, ``k2`` are disjoint.  The fibre over
    ``0`` breaks into ``Ft = s - e`` and the exceptional curve ``E``.
    """
    return ChowModel(2, [["1"], ["s", "h", "e"], ["pt"]],
                     {("s", "h"): {"pt": 1}, ("e", "e"): {"pt": -1}},
                     {"k1": {"h": 1, "e": -1}, "k2": {"s": 1, "h": 1, "e": -1},
                      "Ft": {"s": 1, "e": -1}, "E": {"e": 1}},
                     name="BlP1xP1")


def point() -> ChowModel:
    return ChowModel(0, [["1"]], {}, name="pt")


def corrupted_p2() -> ChowModel:
    """A deliberately inconsistent table: ``h*h = 2h^2`` and ``h^2 * 1 = 3h^2``
    while ``1 * h^2`` keeps its default.

    Built without validation so the failure can be inspected.
    """
    return ChowModel(2, [["1"], ["h"], ["h^2"]],
                     {("h", "h"): {"h^2": 2}, ("h^2", "1"): {"h^2": 3}},
                     name="P2-corrupted", validate=False)


def models() -> dict[str, ChowModel]:
    """Named models that JSON inputs may refer to."""
    out = {m.name: m for m in (p1(), p2(), p1xp1(), blowup_p2(), blowup_p1xp1(), point())}
    out["P1cover"] = p1("P1cover", {"0'": {"pt": 1}, "inf'": {"pt": 1}})
    return out


# -- morphisms ----------------------------------------------------------------------------


def double_cover() -> ParabolicMorphism:
    """``z -> z^2`` on ``P^1``, branched over ``0`` and ``inf``: ``f^*[0] = 2[0']``."""
    down, up = p1(), p1("P1cover", {"0'": {"pt": 1}, "inf'": {"pt": 1}})
    f = ChowMap(down, up, {"pt": {"pt": 2}})
    return ParabolicMorphism(f, NormalCrossingsDivisor.from_registry(down),
                             NormalCrossingsDivisor.from_registry(up),
                             {"0": {"0'": 2}, "inf": {"inf'": 2}})


def blowup_morphism() -> ParabolicMorphism:
    """``Bl_p P^2 -> P^2`` with ``p`` on ``L``: ``f^*L = Lt + E``, ``f^*M = Mt``."""
    down, up = p2(), blowup_p2()
    f = ChowMap(down, up, {"h": {"H": 1}})
    return ParabolicMorphism(f, NormalCrossingsDivisor.from_registry(down),
                             NormalCrossingsDivisor.from_registry(up),
                             {"L": {"Lt": 1, "E": 1}, "M": {"Mt": 1}})


def line_restriction() -> ParabolicMorphism:
    """Inclusion of a general line ``Y`` into ``P^2`` (as a pullback ``h -> pt``).

    ``Y`` meets ``L`` and ``M`` transversally in single points ``y_L`` and
    ``y_M``, which become the components of the restricted divisor.
    """
    down = p2()
    up = p1("Y", {"yL": {"pt": 1}, "yM": {"pt": 1}})
    f = ChowMap(down, up, {"h": {"pt": 1}})
    return ParabolicMorphism(f, NormalCrossingsDivisor.from_registry(down),
                             NormalCrossingsDivisor.from_registry(up),
                             {"L": {"yL": 1}, "M": {"yM": 1}})


def identity_morphism(model: ChowModel) -> ParabolicMorphism:
    div = NormalCrossingsDivisor.from_registry(model)
    return ParabolicMorphism(ChowMap.identity(model), div, div, {c: {c: 1} for c in div.ids})


def morphisms() -> dict[str, Callable[[], ParabolicMorphism]]:
    return {"double-cover": double_cover, "blowup": blowup_morphism,
            "line-restriction": line_restriction}


# -- families of pointed curves -------------------------------------------------------------


def trivial_family() -> FamilyModel:
    """``P^1`` over a point: the classical Riemann-Roch check."""
    P, S = projective_space(1, "P1h"), point()
    return FamilyModel(P, S, ChowMap(S, P, {}), ChowMap(P, S, {"h": {"1": 1}}, "pushforward", 1),
                       P.element({"1": 1, "h": 1}), P.element({"h": -2}), name="P1/pt")


def pointed_curves(r: int, corrupted: bool = False) -> FamilyModel:
    """``S x P^1 -> S = P^1`` with ``r`` constant sections ``k1..kr`` (class ``h``).

    ``Omega^1_{P/S}(log K)`` has ``c1 = -2h + r h``; the relative Todd class is
    ``1 + h``.  ``F0`` (class ``s``) is a vertical fibre.  With
    ``corrupted=True`` the log cotangent class is replaced by ``s``.
    """
    if r < 0:
        raise ValueError("number of sections must be non-negative")
    divisors = {f"k{i}": {"h": 1} for i in range(1, r + 1)}
    divisors["F0"] = {"s": 1}
    name = f"SxP1[r={r}]" + ("-corrupted" if corrupted else "")
    P = p1xp1(name, divisors)
    S = p1("S", ["pt"])
    pull = ChowMap(S, P, {"pt": {"s": 1}})
    push = ChowMap(P, S, {"h": {"1": 1}, "sh": {"pt": 1}}, "pushforward", 1)
    c1 = P.element({"s": 1}) if corrupted else P.element({"h": r - 2})
    return FamilyModel(P, S, pull, push, P.element({"1": 1, "h": 1}), c1,
                       tuple(f"k{i}" for i in range(1, r + 1)), ("F0",), name=name)


def blowup_family() -> FamilyModel:
    """Two sections of ``P^1 x P^1 -> P^1`` colliding over ``0``, separated by one blowup.

    ``c1(Omega^1_{P/S}(log D)) = s - e`` and ``td = 1 + h - e/2``.
    """
    P = blowup_p1xp1()
    S = p1("S", ["pt"])
    pull = ChowMap(S, P, {"pt": {"s": 1}})
    push = ChowMap(P, S, {"h": {"1": 1}, "pt": {"pt": 1}}, "pushforward", 1)
    return FamilyModel(P, S, pull, push, P.element({"1": 1, "h": 1, "e": Fraction(-1, 2)}),
                       P.element({"s": 1, "e": -1}), ("k1", "k2"), ("Ft", "E"),
                       name="blowup-family")


def families() -> dict[str, Callable[[], FamilyModel]]:
    out: dict[str, Callable[[], FamilyModel]] = {
        "trivial": trivial_family, "blowup": blowup_family,
        "corrupted": lambda: pointed_curves(3, corrupted=True)}
    for r in POINTED_CURVE_RANGE:
        out[f"pointed-{r}"] = (lambda r=r: pointed_curves(r))
    return out


# -- logarithmic complexes ---------------------------------------------------------------


def trivial_connection_complex() -> LogComplex:
    """``O^2 --0--> O``, identity scalars, zero residue."""
    return LogComplex(2, (2, 1), (pm([[0, 0]]),), (pm_identity(2), pm_identity(1)),
                      (pm([[0, 0], [0, 0]]), pm([[0]])), name="trivial-connection")


def t_multiplication_complex() -> LogComplex:
    """``O --t--> O``: compatibility forces ``M1`` to differ by 1 across the arrow."""
    return LogComplex(4, (1, 1), (pm([["t"]]),), (pm([[1]]), pm([[1]])),
                      (pm([[0]]), pm([[-1]])), name="t-multiplication")


def gauge_complex() -> LogComplex:
    """``O^2 --(1, -t)--> O``: the split complex ``(1, 0)`` seen in a moving frame."""
    return LogComplex(3, (2, 1), (pm([[1, "-t"]]),), (pm_identity(2), pm_identity(1)),
                      (pm([[0, "-t"], [0, 0]]), pm([[0]])), name="gauge")


def complexes() -> dict[str, Callable[[], LogComplex]]:
    return {"trivial-connection": trivial_connection_complex,
            "t-multiplication": t_multiplication_complex, "gauge": gauge_complex}
