"""Splitter instances, candidate sets and the splitter property itself."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from math import gcd, lcm
from typing import Iterable

from .numthy import factorize


class InstanceError(ValueError):
    """The triple (q, k1, k2) does not describe a usable splitter problem."""


@dataclass(frozen=True)
class SplitterInstance:
    q: int
    k1: int
    k2: int

    def __post_init__(self) -> None:
        if self.q < 2:
            raise InstanceError(f"q must be >= 2, got {self.q}")
        if not 0 <= self.k1 <= self.k2 or self.k2 < 1:
            raise InstanceError(f"need 0 <= k1 <= k2 and k2 >= 1, got k1={self.k1}, k2={self.k2}")
        if self.k2 >= self.q:
            raise InstanceError(f"k2={self.k2} must be below q={self.q}")

    @property
    def k(self) -> int:
        """Size of the multiplier set, k1 + k2."""
        return self.k1 + self.k2

    @property
    def multipliers(self) -> list[int]:
        """The raw integers -k1..-1, 1..k2 (not reduced)."""
        return [m for m in range(-self.k1, self.k2 + 1) if m]

    @property
    def perfect_size(self) -> int | None:
        """|B| of a perfect set, or None when q != 1 (mod k1+k2)."""
        n, r = divmod(self.q - 1, self.k)
        return None if r else n


@dataclass(frozen=True)
class MultiplierSet:
    elements: tuple[int, ...]
    k1: int
    k2: int


def multiplier_set(inst: SplitterInstance) -> MultiplierSet:
    """Canonical residues of [-k1, k2]* modulo q, in ascending order."""
    residues = [m % inst.q for m in inst.multipliers]
    if len(set(residues)) != len(residues):
        raise InstanceError(
            f"[-{inst.k1}, {inst.k2}]* collides modulo {inst.q} (k1 + k2 = {inst.k} >= q)"
        )
    return MultiplierSet(tuple(sorted(residues)), inst.k1, inst.k2)


@dataclass(frozen=True)
class CandidateSet:
    """A proposed splitter set: distinct nonzero residues mod q, sorted."""

    elements: tuple[int, ...]
    q: int

    @classmethod
    def of(cls, values: Iterable[int], q: int) -> CandidateSet:
        reduced = [v % q for v in values]
        if any(v == 0 for v in reduced):
            raise ValueError("candidate sets cannot contain 0 mod q")
        if len(set(reduced)) != len(reduced):
            raise ValueError("candidate set has repeated residues")
        return cls(tuple(sorted(reduced)), q)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and x % self.q in set(self.elements)

    def scaled(self, c: int) -> CandidateSet:
        return CandidateSet.of((c * b for b in self.elements), self.q)

    def to_json(self) -> str:
        return json.dumps(list(self.elements))

    @classmethod
    def from_json(cls, text: str, q: int) -> CandidateSet:
        data = json.loads(text)
        if not isinstance(data, list) or not all(isinstance(v, int) for v in data):
            raise ValueError("expected a JSON array of integers")
        return cls.of(data, q)

    def to_text(self, inst: SplitterInstance) -> str:
        return f"{inst.q} {inst.k1} {inst.k2} : " + ",".join(map(str, self.elements))


def parse_text(line: str) -> tuple[SplitterInstance, CandidateSet]:
    """Inverse of :meth:`CandidateSet.to_text`: ``"q k1 k2 : b1,b2,..."``."""
    head, sep, tail = line.partition(":")
    if not sep:
        raise ValueError(f"missing ':' in {line!r}")
    parts = head.split()
    if len(parts) != 3:
        raise ValueError(f"expected 'q k1 k2' before ':', got {head!r}")
    q, k1, k2 = map(int, parts)
    inst = SplitterInstance(q, k1, k2)
    tail = tail.strip()
    values = [int(t) for t in tail.split(",")] if tail else []
    return inst, CandidateSet.of(values, q)


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    reason: str = ""
    witness: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def translate(inst: SplitterInstance, b: int) -> list[int]:
    """b * [-k1, k2]* reduced mod q, in multiplier order."""
    return [b * m % inst.q for m in inst.multipliers]


def verify(inst: SplitterInstance, B: CandidateSet) -> VerifyResult:
    """Check the splitter property and name an offending element on failure.

    Each translate b*M must consist of k1+k2 distinct nonzero residues and
    the translates must be pairwise disjoint. Coverage is not required here;
    see :func:`is_perfect`.
    """
    if B.q != inst.q:
        return VerifyResult(False, f"candidate set is modulo {B.q}, instance modulo {inst.q}")
    owner: dict[int, int] = {}
    for b in B.elements:
        image = translate(inst, b)
        if 0 in image:
            return VerifyResult(False, f"translate of {b} contains 0", b)
        if len(set(image)) != len(image):
            return VerifyResult(False, f"translate of {b} has repeated residues", b)
        for x in image:
            if x in owner:
                return VerifyResult(
                    False, f"{x} is covered by both {owner[x]} and {b}", x
                )
            owner[x] = b
    return VerifyResult(True)


def is_perfect(inst: SplitterInstance, B: CandidateSet) -> bool:
    """Size test for a set that already passed :func:`verify`."""
    return len(B) * inst.k == inst.q - 1


def check_perfect(inst: SplitterInstance, B: CandidateSet) -> VerifyResult:
    """verify + is_perfect in one call, with a reason when either fails."""
    res = verify(inst, B)
    if not res:
        return res
    if not is_perfect(inst, B):
        return VerifyResult(False, f"not perfect: {len(B) * inst.k} != {inst.q - 1}")
    return res


def partition_check(inst: SplitterInstance, B: CandidateSet) -> bool:
    """Direct definition: the translates b*M partition Z_q minus 0."""
    seen: list[int] = []
    for b in B.elements:
        seen.extend(translate(inst, b))
    return sorted(seen) == list(range(1, inst.q))


def lines_check(inst: SplitterInstance, B: CandidateSet) -> bool:
    """|B n a*M| == 1 for every nonzero a (meaningful for prime q)."""
    members = set(B.elements)
    mult = multiplier_set(inst).elements
    q = inst.q
    for a in range(1, q):
        if sum(1 for m in mult if a * m % q in members) != 1:
            return False
    return True


class Classification(enum.Enum):
    NONSINGULAR = "nonsingular"
    SINGULAR = "singular"
    PURELY_SINGULAR = "purely_singular"


def classify(inst: SplitterInstance) -> Classification:
    if gcd(inst.q, lcm(*range(1, inst.k2 + 1))) == 1:
        return Classification.NONSINGULAR
    if all(p <= inst.k2 for p in factorize(inst.q).primes):
        return Classification.PURELY_SINGULAR
    return Classification.SINGULAR
