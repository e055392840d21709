"""
Two sections that collide, and one blowup
=========================================

The sections ``y = 0`` and ``y = x`` of ``P^1 x P^1 -> P^1`` meet over
``x = 0``.  After blowing up that point they are disjoint, and the fibre over
``0`` splits into the strict transform ``Ft`` and the exceptional curve ``E``.
"""

# %%
from fractions import Fraction

from parchern import corpus
from parchern.chow import mul
from parchern.grr import chi, log_de_rham_euler, main_identity
from parchern.parabolic import NormalCrossingsDivisor, ch_par, line

fam = corpus.blowup_family()
P = fam.total
k1, k2 = fam.section("k1"), fam.section("k2")
print("k1.k2 =", mul(k1, k2), "| k1^2 =", mul(k1, k1), "| k2^2 =", mul(k2, k2))

# %%
print("chi(O)            =", chi(fam, P.one()))
print("log de Rham of O  =", log_de_rham_euler(fam, P.one()))

# %%
# A weight-1/2 ledger: (O + O(k1/2)) - O(k2/2).
D = NormalCrossingsDivisor.from_registry(P)
E = ch_par(line(D) + line(D, {"k1": Fraction(1, 2)})) - ch_par(line(D, {"k2": Fraction(1, 2)}))
print("E =", E)
res = main_identity(fam, E)
print(res.status, "| result =", res.result, "| r =", res.split.r)
