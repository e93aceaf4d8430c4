"""
When does a perfect B[-1,3](p) set exist?
=========================================

For primes p = 1 mod 4 there is a closed-form test. With p = 5 mod 8 it
asks whether 6 is a fourth power mod p. With p = 1 mod 8 it asks that -3/2
have odd order and that the order of 2 be divisible by 4. Here the test is
checked against exhaustive search and then used to tabulate much further.
"""
import numpy as np

from splitsets import SplitterInstance, criterion_b13, construct_b13, orbit_pruned_search, search_perfect
from splitsets.cli import run_scan
from splitsets.numthy import primes_between

###############################################################################
# Criterion against two searches
# ------------------------------

primes = [p for p in primes_between(5, 400) if p % 4 == 1]
crit = np.array([criterion_b13(p).exists for p in primes])
orbit = np.array([orbit_pruned_search(p).witness is not None for p in primes])
plain = np.array([search_perfect(SplitterInstance(p, 1, 3)).witness is not None for p in primes])
print("primes checked:", len(primes))
print("criterion == orbit search:", bool((crit == orbit).all()))
print("criterion == plain search:", bool((crit == plain).all()))
print("perfect sets exist for p in", [p for p, c in zip(primes, crit) if c])

###############################################################################
# Node counts
# -----------
# Branching over whole orbits of x -> (-3/2)x collapses the search tree.

for p in (149, 241, 389, 577):
    a = orbit_pruned_search(p).nodes
    b = search_perfect(SplitterInstance(p, 1, 3)).nodes
    print(f"p={p}: orbit search {a} nodes, plain search {b} nodes")

###############################################################################
# Constructions
# -------------
# For p = 5 mod 8 the set is the fourth powers; for p = 1 mod 8 it is built
# inside the subgroup <-1, 2, 3> and copied to each coset.

for p in (149, 241):
    B = construct_b13(p)
    print(p, len(B), B.elements[:8], "...")

###############################################################################
# How common are they?
# --------------------

recs = run_scan(1, 3, 5, 20_000, stable=True)
ps = np.array([r.p for r in recs])
hit = np.array([r.criterion == "exists" for r in recs])
edges = np.arange(0, 20_001, 2_500)
counts, _ = np.histogram(ps[hit], bins=edges)
totals, _ = np.histogram(ps, bins=edges)
for lo, c, t in zip(edges[:-1], counts, totals):
    print(f"[{lo:6d}, {lo + 2500:6d})  {c:3d} of {t:4d} primes  ({c / t:.3f})")
