"""Residues of logarithmic connections and their associated parabolic bundles.

Only the locally abelian case carries full data: a connection is given as a
list of rank-one pieces ``(c1(L), {component: eigenvalue})``.  For a piece
with residue eigenvalue ``lam`` along ``D_i`` the filtered pieces
``F_beta = L(floor(lam + beta) D_i)`` carry residue ``lam - floor(lam + beta)``,
which lies in ``[-beta, 1 - beta)`` and equals ``-beta`` exactly at the jumps.
So the associated parabolic line bundle is ``L(lam D_i)`` and its weight along
``D_i`` is ``-lam (mod 1)``.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from . import linalg
from .chow import ChowElement, ChowModel
from .errors import InvalidModelError, ModelMismatchError, SchemaError
from .parabolic import (NormalCrossingsDivisor, ParabolicKClass, ParabolicLineBundle,
                        ParabolicMorphism, RationalDivisor, frac, normalize_line)


def normalize_eigenvalue(lam) -> tuple[Fraction, int]:
    """Split ``lam = lam0 + shift`` with ``lam0`` in ``(-1, 0]``.

    >>> normalize_eigenvalue(Fraction(3, 2))
    (Fraction(-1, 2), 2)
    """
    lam = linalg.to_fraction(lam)
    shift = math.ceil(lam)
    return lam - shift, shift


def representative_in_window(lam, alpha) -> Fraction:
    """The unique ``lam' = lam (mod 1)`` with ``-alpha <= lam' < 1 - alpha``."""
    lam, alpha = linalg.to_fraction(lam), linalg.to_fraction(alpha)
    return -alpha + frac(lam + alpha)


def weight_of_eigenvalue(lam) -> Fraction:
    return frac(-linalg.to_fraction(lam))


@dataclass(frozen=True)
class ResidueSpectrum:
    """Per component, the residue eigenvalues with multiplicities."""

    per_component: Mapping[str, Counter]

    def __post_init__(self):
        clean = {}
        for cid, eig in self.per_component.items():
            c = Counter()
            for lam, mult in dict(eig).items():
                if mult <= 0:
                    raise InvalidModelError("eigenvalue multiplicities must be positive")
                c[linalg.to_fraction(lam)] += mult
            clean[cid] = c
        object.__setattr__(self, "per_component", clean)

    def rank(self, cid: str) -> int:
        return sum(self.per_component[cid].values())

    def eigenvalues(self):
        for cid, eig in self.per_component.items():
            for lam in eig:
                yield cid, lam


def associated_weights(s: ResidueSpectrum, cid: str) -> Counter:
    """Weights ``frac(-lam)`` along a component, multiplicities preserved."""
    if cid not in s.per_component:
        raise KeyError(f"no residue data for component {cid!r}")
    out: Counter = Counter()
    for lam, mult in s.per_component[cid].items():
        out[weight_of_eigenvalue(lam)] += mult
    return out


def positive_integer_eigenvalue_check(s: ResidueSpectrum) -> bool:
    """True iff no residue eigenvalue is a strictly positive integer."""
    return not any(lam.denominator == 1 and lam > 0 for _, lam in s.eigenvalues())


@dataclass(frozen=True)
class RankOnePiece:
    c1: ChowElement
    eigenvalues: RationalDivisor

    @classmethod
    def make(cls, c1: ChowElement, eigenvalues: Optional[Mapping] = None) -> "RankOnePiece":
        ev = eigenvalues if isinstance(eigenvalues, RationalDivisor) else RationalDivisor(eigenvalues)
        return cls(c1, ev)


@dataclass(frozen=True)
class AbelianLogConnection:
    """A logarithmic connection split into rank-one pieces.

    Components without an eigenvalue entry have residue 0 there.
    """

    divisor: NormalCrossingsDivisor
    pieces: tuple[RankOnePiece, ...]

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        for p in self.pieces:
            if p.c1.model is not self.divisor.model:
                raise ModelMismatchError("piece lives in another Chow model")
            extra = set(p.eigenvalues.support()) - set(self.divisor.ids)
            if extra:
                raise InvalidModelError(f"eigenvalues given off the divisor: {sorted(extra)}")

    @property
    def rank(self) -> int:
        return len(self.pieces)

    def spectrum(self) -> ResidueSpectrum:
        per = {cid: Counter(p.eigenvalues[cid] for p in self.pieces) for cid in self.divisor.ids}
        return ResidueSpectrum(per)

    def __add__(self, other: "AbelianLogConnection") -> "AbelianLogConnection":
        if self.divisor != other.divisor:
            raise ModelMismatchError("connections live over different divisors")
        return AbelianLogConnection(self.divisor, self.pieces + other.pieces)

    def shifted(self, shifts: Mapping[str, int]) -> "AbelianLogConnection":
        """Same connection on ``E(-sum n_i D_i)``: residues move by ``+n_i``."""
        pieces = []
        for p in self.pieces:
            c1 = p.c1
            for cid, n in shifts.items():
                c1 = c1 - n * self.divisor.class_of(cid)
            pieces.append(RankOnePiece(c1, p.eigenvalues + RationalDivisor(shifts)))
        return AbelianLogConnection(self.divisor, tuple(pieces))

    def to_dict(self) -> dict:
        return {"rank": self.rank,
                "pieces": [{"c1": p.c1.to_dict(), "eigenvalues": p.eigenvalues.to_dict()}
                           for p in self.pieces]}

    @classmethod
    def from_dict(cls, data, model: ChowModel, divisor_ids: Optional[Sequence[str]] = None,
                  source: Optional[str] = None) -> "AbelianLogConnection":
        def fail(path, msg):
            raise SchemaError(msg, path, source)

        if not isinstance(data, Mapping) or "pieces" not in data:
            fail("$", "a connection needs a 'pieces' list")
        divisor = NormalCrossingsDivisor.from_registry(model, divisor_ids or data.get("divisor"))
        pieces = []
        for i, p in enumerate(data["pieces"]):
            path = f"$.pieces[{i}]"
            try:
                pieces.append(RankOnePiece.make(model.element(p.get("c1", {})),
                                                p.get("eigenvalues", {})))
            except (KeyError, TypeError, ValueError, AttributeError) as exc:
                fail(path, str(exc))
        if "rank" in data and data["rank"] != len(pieces):
            fail("$.rank", f"rank {data['rank']} but {len(pieces)} rank-one pieces")
        try:
            return cls(divisor, tuple(pieces))
        except (InvalidModelError, ModelMismatchError) as exc:
            fail("$", str(exc))


def associated_parabolic(E: AbelianLogConnection) -> ParabolicKClass:
    """The parabolic bundle attached to ``E``, one term per rank-one piece.

    Each piece ``(L, lam)`` gives ``L(sum lam_i D_i)``, written in normal form
    (twists in ``[0, 1)``, integral parts absorbed into ``c1``).
    """
    div = E.divisor
    terms = tuple((1, normalize_line(div, ParabolicLineBundle(p.c1, p.eigenvalues)))
                  for p in E.pieces)
    return ParabolicKClass(div, terms)


def pullback_connection(f: ParabolicMorphism, E: AbelianLogConnection) -> AbelianLogConnection:
    """Pull a rank-one decomposed connection back along ``f``.

    If ``f^* D_i = sum m_ij D'_j`` then the residue along ``D'_j`` becomes
    ``sum_i m_ij lam_i``; for a transversal restriction this just keeps the
    eigenvalues of the surviving components.
    """
    if E.divisor != f.divisor_down:
        raise ModelMismatchError("connection does not live over the morphism's target")
    pieces = tuple(RankOnePiece(f.ring_map.apply(p.c1), f.pull_divisor(p.eigenvalues))
                   for p in E.pieces)
    return AbelianLogConnection(f.divisor_up, pieces)
