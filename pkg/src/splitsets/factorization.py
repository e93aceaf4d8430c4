"""Additive factorizations A + B = Z_n and their link to splitter sets mod p.

Taking discrete logarithms turns the multiplicative statement
``[-k1, k2]* . B = Z_p^*`` into the additive one ``N + A = Z_{p-1}`` with
N = ind(multipliers) and A = ind(B). The subgroup helpers at the bottom work
inside H = <-1, 2, ..., k2>, the smallest subgroup containing the
multipliers: a factorization of H lifts to Z_p^* coset by coset.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable

import numpy as np

from .numthy import IndexContext, is_prime, mult_order
from .splitter import CandidateSet, SplitterInstance, check_perfect, lines_check, multiplier_set


class FactorizationError(ValueError):
    def __init__(self, message: str, witness: int | None = None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class IndexSet:
    elements: tuple[int, ...]
    n: int

    @classmethod
    def of(cls, values: Iterable[int], n: int) -> IndexSet:
        vals = sorted({v % n for v in values})
        return cls(tuple(vals), n)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def to_list(self) -> list[int]:
        return list(self.elements)


@dataclass(frozen=True)
class FactorizationResult:
    ok: bool
    reason: str = ""
    witness: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def _values(S: IndexSet | Iterable[int], n: int) -> np.ndarray:
    vals = S.elements if isinstance(S, IndexSet) else list(S)
    return np.asarray(vals, dtype=np.int64) % n


def sum_counts(A, B, n: int) -> np.ndarray:
    """Number of representations a + b of each residue mod n."""
    a = _values(A, n)
    b = _values(B, n)
    return np.bincount(np.add.outer(a, b).ravel() % n, minlength=n)


def check_factorization(A, B, n: int) -> FactorizationResult:
    """Every residue mod n is a + b in exactly one way.

    On failure the witness is the smallest residue with zero or several
    representations.
    """
    counts = sum_counts(A, B, n)
    bad = np.flatnonzero(counts != 1)
    if bad.size == 0:
        return FactorizationResult(True)
    x = int(bad[0])
    if counts[x] == 0:
        return FactorizationResult(False, f"{x} has no representation a + b", x)
    return FactorizationResult(False, f"{x} has {int(counts[x])} representations a + b", x)


def _differences(S: np.ndarray, n: int) -> set[int]:
    return set((np.subtract.outer(S, S).ravel() % n).tolist())


def factorization_conditions(A, B, n: int) -> dict[str, bool]:
    """The equivalent characterisations of a factorization Z_n = A + B.

    Keys: ``direct_sum`` (all |A||B| sums distinct and they fill Z_n),
    ``cover_and_size``, ``size_and_differences``, ``cover_and_differences``,
    ``translates_of_A`` (the A + b partition Z_n), ``translates_of_B``.
    A and B are taken as sets; repeated entries are dropped first.
    """
    a = np.unique(_values(A, n))
    b = np.unique(_values(B, n))
    sums = np.add.outer(a, b).ravel() % n
    covers = np.unique(sums).size == n
    size_ok = a.size * b.size == n
    diff_ok = _differences(a, n) & _differences(b, n) <= {0}

    def partition(fixed: np.ndarray, shifts: np.ndarray) -> bool:
        seen = np.zeros(n, dtype=np.int64)
        for s in shifts:
            block = (fixed + s) % n
            if np.any(seen[block]):
                return False
            seen[block] = 1
        return bool(seen.all())

    return {
        "direct_sum": bool(np.unique(sums).size == sums.size == n),
        "cover_and_size": bool(covers and size_ok),
        "size_and_differences": bool(size_ok and diff_ok),
        "cover_and_differences": bool(covers and diff_ok),
        "translates_of_A": partition(a, b),
        "translates_of_B": partition(b, a),
    }


def index_transform(
    ctx: IndexContext, inst: SplitterInstance, B: CandidateSet
) -> tuple[IndexSet, IndexSet]:
    """(N, A): discrete logs of the multipliers and of B, modulo p - 1."""
    p = ctx.p
    if inst.q != p:
        raise ValueError(f"instance modulus {inst.q} differs from index context prime {p}")
    if B.q != p:
        raise ValueError("candidate set modulus differs from index context prime")
    if inst.k2 >= p:
        raise ValueError(f"multiplier {inst.k2} is not a unit modulo {p}")
    N = IndexSet.of((ctx.ind(m) for m in multiplier_set(inst).elements), p - 1)
    A = IndexSet.of((ctx.ind(b) for b in B.elements), p - 1)
    return N, A


def nonsingular_conditions(
    ctx: IndexContext, inst: SplitterInstance, B: CandidateSet
) -> dict[str, bool]:
    """The per-set conditions that each characterise a perfect set mod a prime.

    ``index_factorization``: N + A = Z_{p-1} is a factorization;
    ``size_and_differences``: k|B| = p - 1 and (N-N) n (A-A) within {0};
    ``translates_of_N`` / ``translates_of_A``: the translates partition Z_{p-1};
    ``lines``: every a*[-k1, k2]* meets B exactly once.
    The existence-only condition (N is a direct factor) is not per-set and is
    not listed.
    """

    p = ctx.p
    N, A = index_transform(ctx, inst, B)
    conds = factorization_conditions(N, A, p - 1)
    n_arr = np.asarray(N.elements, dtype=np.int64)
    a_arr = np.asarray(A.elements, dtype=np.int64)
    return {
        "index_factorization": bool(check_factorization(N, A, p - 1)),
        "size_and_differences": bool(
            inst.k * len(B) == p - 1
            and _differences(n_arr, p - 1) & _differences(a_arr, p - 1) <= {0}
        ),
        "translates_of_N": conds["translates_of_A"],
        "translates_of_A": conds["translates_of_B"],
        "lines": lines_check(inst, B),
    }


def complete_residues(A, m: int) -> bool:
    """A (of size m) meets every residue class mod m exactly once."""
    vals = A.elements if isinstance(A, IndexSet) else list(A)
    if len(vals) != m:
        raise ValueError(f"|A| = {len(vals)} but m = {m}")
    return len({v % m for v in vals}) == m


@dataclass(frozen=True)
class Subgroup:
    p: int
    generator: int
    order: int
    elements: tuple[int, ...]

    @property
    def index(self) -> int:
        return (self.p - 1) // self.order

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and x % self.p in set(self.elements)


def subgroup_closure(gens: Iterable[int], p: int) -> list[int]:
    """Elements of <gens> in Z_p^* by breadth-first closure (small p only)."""
    gens = [g % p for g in gens]
    seen = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g % p
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def subgroup_reduce(inst: SplitterInstance, ctx: IndexContext | None = None) -> Subgroup:
    """H = <-1, 2, ..., k2> inside Z_p^*, via the gcd of the generators' indices.

    When p < 10^4 the result is cross-checked against a direct closure.
    """
    p = inst.q
    if p < 3 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    if inst.k1 < 1:
        raise ValueError("subgroup reduction needs k1 >= 1")
    if p <= inst.k2:
        raise ValueError(f"p={p} must exceed k2={inst.k2}")
    ctx = ctx or IndexContext(p)
    gens = [p - 1] + list(range(2, inst.k2 + 1))
    d = p - 1
    for x in gens:
        d = gcd(d, ctx.ind(x))
    order = (p - 1) // d
    h = ctx.power(d)
    elements = []
    x = 1
    for _ in range(order):
        elements.append(x)
        x = x * h % p
    elements.sort()
    if p < 10_000 and subgroup_closure(gens, p) != elements:
        raise AssertionError(f"index-gcd subgroup disagrees with closure for p={p}")
    assert mult_order(h, p) == order
    return Subgroup(p, h, order, tuple(elements))


def check_subgroup_factorization(
    inst: SplitterInstance, B1: Iterable[int], H: Subgroup
) -> FactorizationResult:
    """[-k1, k2]* . B1 hits every element of H exactly once (and nothing else)."""
    p = inst.q
    mult = multiplier_set(inst).elements
    members = set(H.elements)
    counts: dict[int, int] = {}
    for b in B1:
        if b % p not in members:
            return FactorizationResult(False, f"{b} is not in the subgroup", b % p)
        for m in mult:
            y = m * b % p
            counts[y] = counts.get(y, 0) + 1
    for x in H.elements:
        c = counts.get(x, 0)
        if c != 1:
            return FactorizationResult(False, f"{x} is covered {c} times", x)
    return FactorizationResult(True)


def coset_representatives(H: Subgroup) -> list[int]:
    """Smallest residue of each coset of H, taking cosets in that order."""
    p = H.p
    covered = bytearray(p)
    reps = []
    for g in range(1, p):
        if covered[g]:
            continue
        reps.append(g)
        for h in H.elements:
            covered[g * h % p] = 1
    return reps


def coset_lift(inst: SplitterInstance, B1: Iterable[int], H: Subgroup | None = None) -> CandidateSet:
    """Extend a factorization M . B1 = H to a perfect set for Z_p^*."""
    H = H or subgroup_reduce(inst)
    B1 = sorted(b % inst.q for b in B1)
    res = check_subgroup_factorization(inst, B1, H)
    if not res:
        raise FactorizationError(f"B1 does not factor the subgroup: {res.reason}", res.witness)
    p = inst.q
    B = CandidateSet.of((g * b for g in coset_representatives(H) for b in B1), p)
    out = check_perfect(inst, B)
    if not out:
        raise AssertionError(f"lifted set failed verification: {out.reason}")
    return B
