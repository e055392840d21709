"""Seeded random inputs for scenario sweeps and property tests.

All draws go through a caller-supplied :class:`random.Random`, so a seed pins
every sweep.  Rationals are kept small (numerators in ``[-6, 6]``,
denominators from a short list) to keep the arithmetic fast and the failures
readable.
"""
from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction
from typing import Sequence

from .chow import ChowElement, ChowModel
from .grr import FamilyModel
from .logconn import AbelianLogConnection, RankOnePiece, ResidueSpectrum
from .parabolic import (MultiIndex, NormalCrossingsDivisor, ParabolicKClass, ParabolicLineBundle,
                        RationalDivisor)

DENOMINATORS = (1, 2, 3, 4, 6)


def rational(rng: random.Random, bound: int = 6, denominators: Sequence[int] = DENOMINATORS) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.choice(denominators))


def element(rng: random.Random, model: ChowModel, degrees: Sequence[int] | None = None,
            bound: int = 4) -> ChowElement:
    degrees = range(model.dimension + 1) if degrees is None else degrees
    coeffs = {lab: rational(rng, bound) for k in degrees for lab in model.basis[k]}
    return model.element(coeffs)


def divisor_class(rng: random.Random, model: ChowModel) -> ChowElement:
    return element(rng, model, [1]) if model.dimension >= 1 else model.zero()


def rational_divisor(rng: random.Random, divisor: NormalCrossingsDivisor) -> RationalDivisor:
    return RationalDivisor({cid: rational(rng) for cid in divisor.ids if rng.random() < 0.8})


def multi_index(rng: random.Random, divisor: NormalCrossingsDivisor) -> MultiIndex:
    return MultiIndex({cid: rational(rng, 3) for cid in divisor.ids})


def line_bundle(rng: random.Random, divisor: NormalCrossingsDivisor) -> ParabolicLineBundle:
    return ParabolicLineBundle(divisor_class(rng, divisor.model), rational_divisor(rng, divisor))


def kclass(rng: random.Random, divisor: NormalCrossingsDivisor, max_terms: int = 3,
           signed: bool = False) -> ParabolicKClass:
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        mult = rng.choice((-2, -1, 1, 1, 2)) if signed else rng.randint(1, 2)
        terms.append((mult, line_bundle(rng, divisor)))
    return ParabolicKClass(divisor, tuple(terms))


def spectrum(rng: random.Random, components: Sequence[str] = ("D1", "D2"),
             max_rank: int = 4) -> ResidueSpectrum:
    rank = rng.randint(1, max_rank)
    per = {}
    for cid in components:
        eig: Counter = Counter(rational(rng, 8, (1, 2, 3, 4, 5, 6, 8)) for _ in range(rank))
        per[cid] = eig
    return ResidueSpectrum(per)


def connection(rng: random.Random, divisor: NormalCrossingsDivisor, max_rank: int = 3) -> AbelianLogConnection:
    pieces = tuple(
        RankOnePiece(divisor_class(rng, divisor.model),
                     RationalDivisor({cid: rational(rng, 5) for cid in divisor.ids}))
        for _ in range(rng.randint(1, max_rank)))
    return AbelianLogConnection(divisor, pieces)


def section_supported(rng: random.Random, fam: FamilyModel) -> ChowElement:
    """A random element of the ideal generated by the marked sections."""
    P = fam.total
    out = P.zero()
    for cid in fam.horizontal:
        if rng.random() < 0.7:
            out = out + fam.section(cid) * element(rng, P)
    return out
