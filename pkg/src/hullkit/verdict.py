from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"
CLAIM_HOLDS = "claim-holds"
CLAIM_VIOLATED = "claim-violated"

STATUSES = (PASS, FAIL, SKIPPED, CLAIM_HOLDS, CLAIM_VIOLATED)


@dataclass
class Verdict:
    """Outcome of one audit.

    Claim audits (``claim-holds`` / ``claim-violated``) record an empirical
    check of a stated bound and never count as hard failures.
    """

    name: str
    status: str
    data: dict[str, Any] = field(default_factory=dict)
    witness: Any = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown verdict status {self.status!r}")

    @property
    def is_claim(self) -> bool:
        return self.status in (CLAIM_HOLDS, CLAIM_VIOLATED)

    @property
    def hard_failure(self) -> bool:
        return self.status in (FAIL, SKIPPED)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "verdict": self.status}
        if self.data:
            out["data"] = self.data
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def check(name: str, ok: bool, data=None, witness=None) -> Verdict:
    return Verdict(name, PASS if ok else FAIL, dict(data or {}), None if ok else witness)


def claim(name: str, holds: bool, data=None, witness=None) -> Verdict:
    return Verdict(name, CLAIM_HOLDS if holds else CLAIM_VIOLATED, dict(data or {}),
                   None if holds else witness)
