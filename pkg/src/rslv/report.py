"""Check records and the JSON verification report."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    detail: str

    @property
    def canonical_hash(self) -> str:
        payload = canonical_json([self.name, self.status, self.detail])
        return hashlib.sha256(payload.encode("ascii")).hexdigest()

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "detail": self.detail,
            "canonical_hash": self.canonical_hash,
        }


def check(name: str, ok: bool, detail: str = "") -> Check:
    return Check(name, PASS if ok else FAIL, detail)


def skipped(name: str, detail: str) -> Check:
    return Check(name, SKIPPED, detail)


@dataclass
class VerificationReport:
    command: str
    params: dict
    checks: list[Check] = field(default_factory=list)
    elapsed_ms: int = 0

    def sorted_checks(self) -> list[Check]:
        return sorted(self.checks, key=lambda c: c.name)

    @property
    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failed

    def checks_json(self) -> str:
        """The part of the report that must be identical across runs."""
        return canonical_json([c.to_dict() for c in self.sorted_checks()])

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "params": self.params,
            "checks": [c.to_dict() for c in self.sorted_checks()],
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)
