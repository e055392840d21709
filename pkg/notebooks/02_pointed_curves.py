"""
Relative log de Rham Euler classes of pointed lines
===================================================

``S x P^1 -> S`` with ``r`` constant sections: the Euler class is the
constant ``2 - r``.  A corrupted log cotangent class breaks the residue check.
"""

# %%
from parchern import corpus
from parchern.grr import log_de_rham_euler, main_identity, residue_iso_check

for r in corpus.POINTED_CURVE_RANGE:
    fam = corpus.pointed_curves(r)
    print(f"r = {r:2d}:", log_de_rham_euler(fam, fam.total.one()))

# %%
bad = corpus.pointed_curves(3, corrupted=True)
print("residue check on k1:", residue_iso_check(bad, "k1"))
res = main_identity(bad, bad.total.one())
print(res.status, "-", res.failure)
