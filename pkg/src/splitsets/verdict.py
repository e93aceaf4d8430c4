from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any

from .splitter import CandidateSet


class Outcome(enum.Enum):
    EXISTS = "exists"
    NOT_EXISTS = "not_exists"
    UNKNOWN = "unknown"

    @property
    def decided(self) -> bool:
        return self is not Outcome.UNKNOWN


@dataclass(frozen=True)
class Verdict:
    """Existence outcome with the rule that produced it.

    ``provenance`` is a stable identifier (used verbatim in scan output);
    ``violated`` names the failing condition for NOT_EXISTS verdicts.
    """

    outcome: Outcome
    provenance: str
    params: dict[str, Any] = field(default_factory=dict)
    witness: CandidateSet | None = None
    violated: str | None = None

    @property
    def exists(self) -> bool:
        return self.outcome is Outcome.EXISTS

    def to_dict(self) -> dict[str, Any]:
        return {
            "outcome": self.outcome.value,
            "provenance": self.provenance,
            "params": self.params,
            "violated": self.violated,
            "witness": list(self.witness.elements) if self.witness is not None else None,
        }
