"""Check-by-check verification reports shared by the verification operations."""
from __future__ import annotations

import numbers
from dataclasses import dataclass, field
from typing import Any

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class CheckResult:
    name: str
    status: str
    witness: Any = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        out: dict[str, Any] = {"check": self.name, "status": self.status}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class ValidationReport:
    subject: str
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, ok: bool, witness=None, detail: str = "") -> CheckResult:
        res = CheckResult(name, PASS if ok else FAIL, None if ok else witness, detail)
        self.checks.append(res)
        return res

    def skip(self, name: str, reason: str) -> None:
        self.checks.append(CheckResult(name, SKIPPED, detail=reason))

    def extend(self, other: "ValidationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(CheckResult(prefix + c.name, c.status, c.witness, c.detail))

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def first_failure(self) -> CheckResult | None:
        return next((c for c in self.checks if c.status == FAIL), None)

    def to_json(self) -> dict:
        return {"subject": self.subject, "ok": self.ok, "checks": [c.to_json() for c in self.checks]}

    def __str__(self) -> str:
        lines = [f"{self.subject}: {'PASS' if self.ok else 'FAIL'}"]
        for c in self.checks:
            extra = f" at {c.witness}" if c.witness is not None else ""
            note = f" ({c.detail})" if c.detail else ""
            lines.append(f"  [{c.status}] {c.name}{extra}{note}")
        return "\n".join(lines)


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (str, bool)) or x is None:
        return x
    if isinstance(x, numbers.Integral):
        return int(x)
    return str(x)
