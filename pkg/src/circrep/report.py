"""Claim reports shared by the verification layer."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class ClaimReport:
    """Machine-readable verdict for one checked claim."""

    claim_id: str
    statement: str
    passed: bool
    witnesses: list = field(default_factory=list)
    parameters: dict = field(default_factory=dict)
    stats: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "statement": self.statement,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "parameters": self.parameters,
            "stats": self.stats,
            "notes": self.notes,
        }
