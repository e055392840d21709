"""
Rank jumps need a non-nilpotent residue
=======================================

``O --t--> O`` has cohomology at ``t = 0`` but none generically.  Any
compatible ``t d/dt`` action must shift by one across the arrow, so the
residue cannot be nilpotent on both cohomology groups and the criterion makes
no claim.
"""

# %%
import random

from parchern import corpus
from parchern.steenbrink import random_split_complex, verdict

v = verdict(corpus.t_multiplication_complex())
print(v.status, v.origin_ranks, "->", v.generic_ranks)
for reason in v.reasons:
    print("  ", reason)

# %%
rng = random.Random(7)
tally = {}
for _ in range(50):
    s = verdict(random_split_complex(rng)).status
    tally[s] = tally.get(s, 0) + 1
print(tally)
