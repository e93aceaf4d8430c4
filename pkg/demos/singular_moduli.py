"""
Singular moduli
===============

When q has a prime factor at most k2 the index argument is unavailable and
the arithmetic gets coarser: q = 2^n and q = n^2 are good places to look.
"""
from splitsets import SplitterInstance
from splitsets.criteria import dichotomy_check, divisibility_necessary, purely_singular_power
from splitsets.search import SearchConfig, search_perfect

###############################################################################
# Powers of two
# -------------
# Mod 8 the seven multipliers of [-1, 6]* are all of Z_8 minus 0, so {1}
# works. Mod larger powers of two nothing does.

cfg = SearchConfig(node_limit=10**8)
for k1, k2 in ((1, 6), (3, 4)):
    for n in (3, 4, 5, 6):
        q = 2**n
        rule = purely_singular_power(2, n, k1, k2).outcome.value
        found = search_perfect(SplitterInstance(q, k1, k2), cfg)
        print(f"[-{k1},{k2}] mod {q:4d}: rule {rule:10s} search {found.outcome.value} ({found.nodes} nodes)")

###############################################################################
# Squares
# -------
# With k1 + k2 + 1 = 9, composite, the modulus 81 is ruled out both by the
# dichotomy test and by the search.

for k1, k2 in ((2, 6), (3, 5)):
    v = dichotomy_check(81, k1, k2)
    found = search_perfect(SplitterInstance(81, k1, k2), cfg)
    print(f"[-{k1},{k2}] mod 81: {v.outcome.value} ({v.violated}); search {found.outcome.value}")

###############################################################################
# Divisors a(k1+k2)+r that m must have
# ------------------------------------

for m, k1, k2 in ((64, 1, 6), (25, 1, 3), (91, 1, 5)):
    cons, v = divisibility_necessary(m, k1, k2)
    print(m, (k1, k2), [(c.divisor, c.holds) for c in cons], v.outcome.value)
