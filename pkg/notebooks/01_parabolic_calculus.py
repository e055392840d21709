"""
Parabolic line bundles on P^1 and P^2
=====================================

A short tour of weights, constituents and parabolic Chern characters.
"""

# %%
from fractions import Fraction

from parchern import corpus
from parchern.parabolic import (NormalCrossingsDivisor, ch_par, constituent, diff_over_d, line,
                                weights_along)

P1 = corpus.p1()
D = NormalCrossingsDivisor.from_registry(P1, ["0"])
F = line(D, {"0": Fraction(1, 2)})
print("F          =", F)
print("weights    =", dict(weights_along(F, "0")))

# %%
# Constituents round the twist down; moving beta past the jump adds a copy of D.
for beta in (0, Fraction(1, 4), Fraction(1, 2), 1):
    print(f"F_{beta} =", constituent(F, {"0": beta}))

# %%
# The parabolic Chern character differs from ch(F_0) by a class living on D.
print("ch_par(F)  =", ch_par(F))
r = diff_over_d(F)
print("difference =", r.difference, "| supported on D:", r.supported_on_d)

# %%
# On P^2 the balanced pair O(L/2) + O(-L/2) has no first Chern class left over.
P2 = corpus.p2()
D2 = NormalCrossingsDivisor.from_registry(P2)
pair = line(D2, {"L": Fraction(1, 2)}) + line(D2, {"L": Fraction(-1, 2)})
print("ch_par(pair) =", ch_par(pair))
