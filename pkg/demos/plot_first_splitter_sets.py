"""
First look at splitter sets
===========================

A set B of nonzero residues mod q is a splitter set for the multipliers
[-k1, k2]* = {-k1, ..., -1, 1, ..., k2} when the products b*m, b in B,
are all distinct and nonzero. It is perfect when they hit every nonzero
residue exactly once.
"""
import numpy as np

from splitsets import CandidateSet, SplitterInstance, classify, multiplier_set, verify
from splitsets.search import Mode, SearchConfig, count_inequivalent, search_perfect
from splitsets.splitter import check_perfect

###############################################################################
# Checking a set by hand
# ----------------------
# Mod 5 the four multipliers {-1, 1, 2, 3} already cover Z_5 minus 0.

inst = SplitterInstance(5, 1, 3)
print("M mod 5 =", multiplier_set(inst).elements)
print("{1} perfect mod 5:", bool(check_perfect(inst, CandidateSet.of([1], 5))))

inst13 = SplitterInstance(13, 1, 3)
res = verify(inst13, CandidateSet.of([1, 5, 8], 13))
print("{1,5,8} mod 13:", res.reason, "| certificate", res.witness)

###############################################################################
# Search
# ------
# The search covers Z_q minus 0 with translates b*M, always extending at the
# smallest uncovered residue.

for q in (13, 149, 241):
    out = search_perfect(SplitterInstance(q, 1, 3))
    size = len(out.witness) if out.witness else "-"
    print(f"q={q:4d}  {out.outcome.value:10s} nodes={out.nodes:<4d} |B|={size}")

###############################################################################
# How many perfect sets, and how many up to scaling
# -------------------------------------------------
# Multiplying a perfect set by a unit gives another one, so it is natural to
# count classes.

rows = []
for q, k1, k2 in ((13, 2, 2), (17, 2, 2), (29, 2, 2), (16, 1, 2), (25, 1, 3), (37, 1, 2)):
    inst = SplitterInstance(q, k1, k2)
    out = search_perfect(inst, SearchConfig(Mode.ENUMERATE_ALL))
    rows.append((q, k1, k2, out.count, count_inequivalent(inst, out).count))
table = np.array(rows)
print("   q k1 k2   sets classes")
for r in table:
    print("%4d %2d %2d %6d %7d" % tuple(r))

###############################################################################
# Singular moduli
# ---------------
# When q shares a factor with some multiplier the translates can collapse.

for q, k2 in ((149, 3), (10, 3), (8, 6), (81, 6)):
    print(f"q={q} k2={k2}:", classify(SplitterInstance(q, 1, k2)).value)
