"""Backtracking search for perfect splitter sets.

The search is an exact cover of Z_q minus 0 by translates b*M. The state is a
coverage bitmap plus, for every candidate row, the number of its cells that
are already covered; rows with no covered cell are *live*. Each step takes
the smallest uncovered residue and branches over the live rows through it
(ascending by their smallest generator). A residue left with a single live row
forces that row (unit propagation, not counted as a branch node), and a
branch dies as soon as some uncovered residue has no live row left. All bookkeeping is undone from a
trail on backtrack, so the traversal, the witnesses and the node counts are
fully deterministic.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .numthy import inverse, is_prime, mult_order, solve_linear
from .splitter import (
    CandidateSet,
    InstanceError,
    SplitterInstance,
    check_perfect,
    multiplier_set,
)
from .verdict import Outcome


class Mode(enum.Enum):
    FIRST_WITNESS = "first"
    COUNT_ALL = "count"
    ENUMERATE_ALL = "all"


@dataclass(frozen=True)
class SearchConfig:
    mode: Mode = Mode.FIRST_WITNESS
    prune_orbits: bool = False
    node_limit: int | None = None

    def __post_init__(self) -> None:
        if self.node_limit is not None and self.node_limit < 1:
            raise ValueError("node_limit must be a positive integer")


@dataclass
class SearchOutcome:
    outcome: Outcome
    nodes: int
    witnesses: list[CandidateSet] = field(default_factory=list)
    count: int = 0

    @property
    def witness(self) -> CandidateSet | None:
        return self.witnesses[0] if self.witnesses else None


class SearchInvariantError(AssertionError):
    """A witness produced by the search failed re-verification."""


class _ExactCover:
    """Exact cover of cells 1..q-1 by rows.

    ``rows[r]`` lists the cells of row r. ``choices[r]`` lists the
    interchangeable ways of realising that row as elements of B (several b
    can share one translate, e.g. b and -b when k1 = k2); each choice is a
    tuple of elements. ``extra_prune(cover)`` may veto a partial solution.
    """

    def __init__(
        self,
        q: int,
        rows: Sequence[tuple[int, ...]],
        choices: Sequence[tuple[tuple[int, ...], ...]],
        cell_rows: Sequence[Sequence[int]],
        extra_prune: Callable[["_ExactCover"], bool] | None = None,
    ) -> None:
        self.q = q
        self.rows = rows
        self.choices = choices
        self.cell_rows = cell_rows
        self.extra_prune = extra_prune
        self.covered = bytearray(q)
        self.covered[0] = 1
        self.blocked = [0] * len(rows)
        self.live = [0] * q
        for cells in rows:
            for c in cells:
                self.live[c] += 1
        self.chosen: list[int] = []
        self.nodes = 0

    def row_alive(self, r: int) -> bool:
        return self.blocked[r] == 0

    def _place(self, r: int, singles: list[int]) -> bool:
        covered, blocked, live, rows, cell_rows = (
            self.covered, self.blocked, self.live, self.rows, self.cell_rows,
        )
        cells = rows[r]
        for c in cells:
            covered[c] = 1
        ok = True
        for c in cells:
            for r2 in cell_rows[c]:
                if blocked[r2] == 0:
                    for c2 in rows[r2]:
                        live[c2] -= 1
                        if not covered[c2]:
                            if live[c2] == 0:
                                ok = False
                            elif live[c2] == 1:
                                singles.append(c2)
                blocked[r2] += 1
        self.chosen.append(r)
        return ok

    def _propagate(self, singles: list[int]) -> tuple[bool, int]:
        """Place rows forced by cells with a single live row; return (ok, placed)."""
        placed = 0
        covered, live, blocked = self.covered, self.live, self.blocked
        while singles:
            c = singles.pop()
            if covered[c]:
                continue
            if live[c] == 0:
                return False, placed
            forced = next(r for r in self.cell_rows[c] if blocked[r] == 0)
            placed += 1
            if not self._place(forced, singles):
                return False, placed
        return True, placed

    def _unplace(self) -> None:
        covered, blocked, live, rows, cell_rows = (
            self.covered, self.blocked, self.live, self.rows, self.cell_rows,
        )
        r = self.chosen.pop()
        cells = rows[r]
        for c in reversed(cells):
            for r2 in reversed(cell_rows[c]):
                blocked[r2] -= 1
                if blocked[r2] == 0:
                    for c2 in rows[r2]:
                        live[c2] += 1
        for c in cells:
            covered[c] = 0

    def run(self, mode: Mode, node_limit: int | None) -> tuple[list[list[int]], int, bool]:
        """Return (solutions as row lists, solution count, hit_limit)."""
        q = self.q
        covered = self.covered
        solutions: list[list[int]] = []
        count = 0
        # frame: [branch cell, candidate rows, next index, rows placed by current branch]
        stack: list[list] = []

        def open_frame(start: int) -> list | None:
            x = start
            while x < q and covered[x]:
                x += 1
            if x == q:
                return None
            cands = [r for r in self.cell_rows[x] if self.blocked[r] == 0]
            return [x, cands, 0, 0]

        self.nodes = 1
        root = open_frame(1)
        if root is None:
            return [[]], 1, False
        stack.append(root)
        while stack:
            frame = stack[-1]
            for _ in range(frame[3]):
                self._unplace()
            frame[3] = 0
            x, cands, i, _ = frame
            if i == len(cands):
                stack.pop()
                continue
            frame[2] = i + 1
            self.nodes += 1
            if node_limit is not None and self.nodes > node_limit:
                return solutions, count, True
            singles: list[int] = []
            ok = self._place(cands[i], singles)
            frame[3] = 1
            if ok:
                ok, extra = self._propagate(singles)
                frame[3] += extra
            if ok and self.extra_prune is not None:
                ok = self.extra_prune(self)
            if not ok:
                continue
            child = open_frame(x + 1)
            if child is None:
                mult = 1
                for r in self.chosen:
                    mult *= len(self.choices[r])
                count += mult
                if mode is not Mode.COUNT_ALL:
                    solutions.append(list(self.chosen))
                if mode is Mode.FIRST_WITNESS:
                    return solutions, count, False
                continue
            stack.append(child)
        return solutions, count, False


def _translate_cells(q: int, mult: Sequence[int], b: int) -> tuple[int, ...] | None:
    cells = tuple(b * m % q for m in mult)
    if 0 in cells or len(set(cells)) != len(cells):
        return None
    return cells


def candidates_through(inst: SplitterInstance, x: int) -> list[int]:
    """All b with x in b*M, found by solving m*b = x (mod q) for each m."""
    q = inst.q
    out: set[int] = set()
    for m in inst.multipliers:
        out.update(b for b in solve_linear(m, x, q) if b)
    return sorted(out)


def _finish(
    inst: SplitterInstance,
    cover: _ExactCover,
    solutions: list[list[int]],
    count: int,
    hit_limit: bool,
    mode: Mode,
) -> SearchOutcome:
    witnesses = []
    if mode is Mode.FIRST_WITNESS:
        solutions = solutions[:1]
        count = min(count, 1)
    for sol in solutions:
        picks = [cover.choices[r] for r in sol]
        if mode is Mode.FIRST_WITNESS:
            combos = [tuple(c[0] for c in picks)]
        else:
            combos = itertools.product(*picks)
        for combo in combos:
            B = CandidateSet.of((b for part in combo for b in part), inst.q)
            res = check_perfect(inst, B)
            if not res:
                raise SearchInvariantError(f"search produced an invalid witness {B}: {res.reason}")
            witnesses.append(B)
    witnesses.sort(key=lambda w: w.elements)
    if count:
        outcome = Outcome.EXISTS
    elif hit_limit:
        outcome = Outcome.UNKNOWN
    else:
        outcome = Outcome.NOT_EXISTS
    return SearchOutcome(outcome, cover.nodes, witnesses, count)


def search_perfect(inst: SplitterInstance, cfg: SearchConfig = SearchConfig()) -> SearchOutcome:
    """Exhaustive backtracking search for perfect B[-k1, k2](q) sets."""
    if cfg.prune_orbits:
        if (inst.k1, inst.k2) != (1, 3) or not is_prime(inst.q):
            raise ValueError("orbit pruning applies only to B[-1,3](p) with p prime")
        return orbit_pruned_search(inst.q, SearchConfig(cfg.mode, True, cfg.node_limit))
    if inst.perfect_size is None:
        return SearchOutcome(Outcome.NOT_EXISTS, 0)
    q = inst.q
    mult = multiplier_set(inst).elements
    rows: list[tuple[int, ...]] = []
    alts: list[list[tuple[int, ...]]] = []
    row_of: dict[int, int] = {}
    by_cells: dict[frozenset[int], int] = {}
    for b in range(1, q):
        cells = _translate_cells(q, mult, b)
        if cells is None:
            continue
        key = frozenset(cells)
        if key not in by_cells:
            by_cells[key] = len(rows)
            rows.append(cells)
            alts.append([])
        row_of[b] = by_cells[key]
        alts[row_of[b]].append((b,))
    cell_rows: list[list[int]] = [[] for _ in range(q)]
    for x in range(1, q):
        rs = (row_of[b] for b in candidates_through(inst, x) if b in row_of)
        cell_rows[x] = list(dict.fromkeys(rs))
    cover = _ExactCover(q, rows, [tuple(a) for a in alts], cell_rows)
    return _finish(inst, cover, *cover.run(cfg.mode, cfg.node_limit), cfg.mode)


def orbit_pruned_search(p: int, cfg: SearchConfig = SearchConfig()) -> SearchOutcome:
    """Search for perfect B[-1,3](p) sets that adds whole (-3/2)-orbits at once.

    Any perfect set for p = 1 (mod 4) is a union of cosets of <-3/2>, so the
    rows here are those cosets. A partial solution is also cut when some
    chosen i has neither 6i nor -6i still available.
    """
    if p <= 3 or not is_prime(p) or p % 4 != 1:
        raise ValueError(f"orbit-pruned search needs a prime p = 1 (mod 4), p > 3; got {p}")
    inst = SplitterInstance(p, 1, 3)
    mult = multiplier_set(inst).elements
    c = (-3) * inverse(2, p) % p
    orbit_len = mult_order(c, p)
    orbit_id = [-1] * p
    rows: list[tuple[int, ...]] = []
    gens: list[tuple[int, ...]] = []
    for start in range(1, p):
        if orbit_id[start] != -1:
            continue
        members = []
        y = start
        for _ in range(orbit_len):
            orbit_id[y] = -2
            members.append(y)
            y = y * c % p
        cells: list[int] = []
        for b in members:
            cells.extend(b * m % p for m in mult)
        if len(set(cells)) != len(cells):
            # a degenerate coset can never be part of a perfect set
            continue
        rid = len(rows)
        for b in members:
            orbit_id[b] = rid
        rows.append(tuple(cells))
        gens.append(tuple(sorted(members)))
    cell_rows: list[list[int]] = [[] for _ in range(p)]
    for rid, cells in enumerate(rows):
        for x in cells:
            cell_rows[x].append(rid)
    for lst in cell_rows:
        lst.sort(key=lambda r: gens[r][0])

    def six_rule(cover: _ExactCover) -> bool:
        chosen = set(cover.chosen)
        for r in cover.chosen:
            for i in gens[r]:
                ok = False
                for y in (6 * i % p, -6 * i % p):
                    ry = orbit_id[y]
                    if ry >= 0 and (ry in chosen or cover.row_alive(ry)):
                        ok = True
                        break
                if not ok:
                    return False
        return True

    cover = _ExactCover(p, rows, [(g,) for g in gens], cell_rows, six_rule)
    if not rows:
        # every coset is degenerate (e.g. -1 lies in <-3/2>): only the root is visited
        cover.nodes = 1
        return SearchOutcome(Outcome.NOT_EXISTS, 1)
    return _finish(inst, cover, *cover.run(cfg.mode, cfg.node_limit), cfg.mode)


def canonical_form(B: CandidateSet) -> tuple[int, ...]:
    """Lexicographically least sorted c*B over all units c."""
    q = B.q
    best: tuple[int, ...] | None = None
    for c in range(1, q):
        try:
            inverse(c, q)
        except ValueError:
            continue
        cand = tuple(sorted(c * b % q for b in B.elements))
        if best is None or cand < best:
            best = cand
    assert best is not None
    return best


@dataclass(frozen=True)
class EquivalenceClasses:
    count: int
    representatives: list[CandidateSet]


def count_inequivalent(inst: SplitterInstance, outcome: SearchOutcome) -> EquivalenceClasses:
    """Group witnesses under B ~ c*B (c a unit mod q)."""
    if outcome.count and len(outcome.witnesses) != outcome.count:
        raise ValueError("count_inequivalent needs an ENUMERATE_ALL outcome")
    reps = sorted({canonical_form(w) for w in outcome.witnesses})
    return EquivalenceClasses(len(reps), [CandidateSet(r, inst.q) for r in reps])


def naive_perfect_sets(inst: SplitterInstance, limit: int = 2_000_000) -> list[CandidateSet] | None:
    """All perfect sets by trying every subset of the right size.

    Returns None when there are more than ``limit`` subsets to look at.
    """
    n = inst.perfect_size
    if n is None:
        return []
    q = inst.q
    total = 1
    for i in range(n):
        total = total * (q - 1 - i) // (i + 1)
    if total > limit:
        return None
    mult = [m % q for m in inst.multipliers]
    target = list(range(1, q))
    out = []
    for combo in itertools.combinations(range(1, q), n):
        seen = sorted(b * m % q for b in combo for m in mult)
        if seen == target:
            out.append(CandidateSet(combo, q))
    return out


def algorithm_x_perfect_sets(inst: SplitterInstance) -> list[CandidateSet]:
    """All perfect sets via a textbook dict-of-sets Algorithm X (MRV column).

    Shares nothing with :class:`_ExactCover`; used as a cross-check where
    subset enumeration is out of reach.
    """
    if inst.perfect_size is None:
        return []
    q = inst.q
    mult = [m % q for m in inst.multipliers]
    rows = {}
    for b in range(1, q):
        cells = [b * m % q for m in mult]
        if 0 not in cells and len(set(cells)) == len(cells):
            rows[b] = cells
    cols: dict[int, set[int]] = {x: set() for x in range(1, q)}
    for b, cells in rows.items():
        for x in cells:
            cols[x].add(b)

    def select(b):
        removed = []
        for x in rows[b]:
            for other in cols[x]:
                for y in rows[other]:
                    if y != x:
                        cols[y].discard(other)
            removed.append(cols.pop(x))
        return removed

    def deselect(b, removed):
        for x in reversed(rows[b]):
            cols[x] = removed.pop()
            for other in cols[x]:
                for y in rows[other]:
                    if y != x:
                        cols[y].add(other)

    out: list[CandidateSet] = []
    partial: list[int] = []

    def solve():
        if not cols:
            out.append(CandidateSet.of(partial, q))
            return
        x = min(cols, key=lambda c: (len(cols[c]), c))
        for b in sorted(cols[x]):
            partial.append(b)
            removed = select(b)
            solve()
            deselect(b, removed)
            partial.pop()

    solve()
    return sorted(out, key=lambda w: w.elements)


__all__ = [
    "Mode",
    "SearchConfig",
    "SearchOutcome",
    "SearchInvariantError",
    "search_perfect",
    "orbit_pruned_search",
    "count_inequivalent",
    "canonical_form",
    "candidates_through",
    "naive_perfect_sets",
    "algorithm_x_perfect_sets",
    "InstanceError",
]
