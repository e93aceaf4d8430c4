"""
From products to sums
=====================

Taking discrete logarithms base a primitive root g turns the cover
M * B = Z_p^* into the sum N + A = Z_(p-1), with N and A the logs of the
multipliers and of B. Perfect sets mod p are exactly the A that make this
sum a factorization.
"""
import numpy as np

from splitsets import IndexContext, SplitterInstance, construct_b13, subgroup_reduce
from splitsets.factorization import check_factorization, index_transform, sum_counts

###############################################################################
# p = 149
# -------

p = 149
inst = SplitterInstance(p, 1, 3)
ctx = IndexContext(p)
B = construct_b13(p)
N, A = index_transform(ctx, inst, B)
print("g =", ctx.g, " N =", N.elements)
print("N mod 4 =", sorted(x % 4 for x in N), " A mod 4 =", set(a % 4 for a in A))
counts = sum_counts(N, A, p - 1)
print("representation counts: min", counts.min(), "max", counts.max())
print("factorization:", bool(check_factorization(N, A, p - 1)))

###############################################################################
# A broken set shows where it breaks
# ----------------------------------

A_bad = list(A.elements)
A_bad[0] += 1
res = check_factorization(N, A_bad, p - 1)
print(res.reason)
print("residues with two representations:", np.flatnonzero(sum_counts(N, A_bad, p - 1) == 2))

###############################################################################
# p = 241: a proper subgroup
# --------------------------
# Here <-1, 2, 3> has index 2, so a factorization of the subgroup is copied
# to both cosets.

H = subgroup_reduce(SplitterInstance(241, 1, 3))
print("order of <-1,2,3> mod 241:", H.order, " index:", H.index)
B241 = construct_b13(241)
inside = [b for b in B241 if b in H]
print(len(inside), "elements inside H,", len(B241) - len(inside), "in the other coset")
