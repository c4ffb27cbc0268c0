"""Tri-state verdicts: certified true, certified false (with witness), or unknown."""

from __future__ import annotations

from dataclasses import dataclass, field

CERTIFIED_TRUE = "certified_true"
CERTIFIED_FALSE = "certified_false"
UNKNOWN = "unknown_up_to"


@dataclass(frozen=True)
class Verdict:
    status: str
    reason: str
    witness: dict = field(default_factory=dict)
    bound: int | None = None

    @classmethod
    def true(cls, reason: str, **witness) -> Verdict:
        return cls(CERTIFIED_TRUE, reason, dict(witness))

    @classmethod
    def false(cls, reason: str, **witness) -> Verdict:
        return cls(CERTIFIED_FALSE, reason, dict(witness))

    @classmethod
    def unknown(cls, bound: int, reason: str, **witness) -> Verdict:
        return cls(UNKNOWN, reason, dict(witness), bound)

    @property
    def certified(self) -> bool:
        return self.status != UNKNOWN

    @property
    def value(self):
        """True / False when certified, None otherwise."""
        if self.status == CERTIFIED_TRUE:
            return True
        if self.status == CERTIFIED_FALSE:
            return False
        return None

    def summary(self) -> str:
        if self.status == CERTIFIED_TRUE:
            return f"certified({self.reason})"
        if self.status == CERTIFIED_FALSE:
            return f"refuted({self.reason})"
        return f"unknown_up_to({self.bound})"

    def to_json(self) -> dict:
        out = {"status": self.status, "reason": self.reason}
        if self.bound is not None:
            out["bound"] = self.bound
        if self.witness:
            out["witness"] = {k: self.witness[k] for k in sorted(self.witness)}
        return out
