"""Exhaustive enumeration of tiles of Z_N, used as an oracle by the tests.

A tile of size m is a set A (normalised to contain 0) such that some B
gives A + B = Z_N with every sum distinct. Tiling is decided by a short
bitmask search, falling back to Knuth's Algorithm X over the translates of A, choosing the cell with fewest live
translates (a cell with one option is a forced move).
"""

from functools import lru_cache
from itertools import combinations


class _Budget(Exception):
    pass


def _quick_tiling(A, N, budget):
    """Cover the smallest uncovered cell first; give up after ``budget`` nodes."""
    full = (1 << N) - 1
    base = sum(1 << a for a in A)
    masks = [((base << t) | (base >> (N - t))) & full for t in range(N)]
    dead = set()
    nodes = [0]

    def rec(cov):
        if cov == full:
            return True
        if cov in dead:
            return False
        nodes[0] += 1
        if nodes[0] > budget:
            raise _Budget
        x = (~cov & (cov + 1)).bit_length() - 1
        for a in A:
            m = masks[(x - a) % N]
            if not m & cov and rec(cov | m):
                return True
        dead.add(cov)
        return False

    return rec(0)


def has_tiling(A, N, budget=400):
    A = tuple(A)
    try:
        return _quick_tiling(A, N, budget)
    except _Budget:
        return _exact_cover_tiling(A, N)


def _exact_cover_tiling(A, N):
    rows = [frozenset((a + t) % N for a in A) for t in range(N)]
    rows = list(set(rows))
    if len(rows[0]) != len(A) or N % len(A):
        return False
    cols = {x: set() for x in range(N)}
    for i, r in enumerate(rows):
        for x in r:
            cols[x].add(i)

    def select(i):
        removed = []
        for x in rows[i]:
            for j in cols[x]:
                for y in rows[j]:
                    if y != x:
                        cols[y].discard(j)
            removed.append(cols.pop(x))
        return removed

    def deselect(i, removed):
        for x in reversed(list(rows[i])):
            cols[x] = removed.pop()
            for j in cols[x]:
                for y in rows[j]:
                    if y != x:
                        cols[y].add(j)

    def solve():
        if not cols:
            return True
        x = min(cols, key=lambda c: len(cols[c]))
        for i in list(cols[x]):
            removed = select(i)
            if solve():
                deselect(i, removed)
                return True
            deselect(i, removed)
        return False

    return solve()


@lru_cache(maxsize=None)
def tiles_of_size(N, m):
    """Every m-subset of Z_N containing 0 that tiles Z_N, sorted."""
    return tuple(
        (0,) + rest
        for rest in combinations(range(1, N), m - 1)
        if has_tiling((0,) + rest, N)
    )
