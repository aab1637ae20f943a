"""Structured verdicts with deterministic text and JSON renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

PASS, FAIL, INAPPLICABLE = "pass", "fail", "inapplicable"


@dataclass
class Verdict:
    name: str
    status: str
    detail: str = ""
    witness: Any = None

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict:
        d = {"name": self.name, "status": self.status}
        if self.detail:
            d["detail"] = self.detail
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class Report:
    title: str
    verdicts: list[Verdict] = field(default_factory=list)
    values: dict[str, Any] = field(default_factory=dict)
    command: str | None = None
    digest: str | None = None
    # replaces the "title: status" line in text output
    headline: str | None = None

    def add(self, name: str, ok: bool | None, detail: str = "", witness: Any = None) -> Verdict:
        """Record a verdict; ``ok=None`` marks it inapplicable."""
        status = INAPPLICABLE if ok is None else (PASS if ok else FAIL)
        v = Verdict(name, status, detail, witness)
        self.verdicts.append(v)
        return v

    def extend(self, other: "Report", prefix: str = "") -> None:
        for v in other.verdicts:
            self.verdicts.append(Verdict(prefix + v.name, v.status, v.detail, v.witness))
        for k, val in other.values.items():
            self.values[prefix + k] = val

    @property
    def passed(self) -> bool:
        return all(v.ok for v in self.verdicts)

    @property
    def applicable(self) -> bool:
        return any(v.status != INAPPLICABLE for v in self.verdicts)

    @property
    def failures(self) -> list[Verdict]:
        return [v for v in self.verdicts if v.status == FAIL]

    def status(self) -> str:
        if not self.passed:
            return FAIL
        if self.verdicts and not self.applicable:
            return INAPPLICABLE
        return PASS

    def to_dict(self) -> dict:
        d: dict[str, Any] = {"title": self.title}
        if self.command is not None:
            d["command"] = self.command
        if self.digest is not None:
            d["input_sha256"] = self.digest
        d["status"] = self.status()
        if self.headline is not None:
            d["result"] = self.headline
        d["values"] = self.values
        d["verdicts"] = [v.to_dict() for v in self.verdicts]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def to_text(self) -> str:
        lines = []
        if self.command is not None:
            lines.append(f"# {self.command}")
        if self.digest is not None:
            lines.append(f"# input sha256 {self.digest}")
        lines.append(self.headline if self.headline is not None else f"{self.title}: {self.status()}")
        for k, val in self.values.items():
            lines.append(f"  {k}: {_render(val)}")
        for v in self.verdicts:
            line = f"  [{v.status}] {v.name}"
            if v.detail:
                line += f": {v.detail}"
            lines.append(line)
            if v.witness is not None and v.status == FAIL:
                lines.append(f"      witness: {json.dumps(v.witness)}")
        return "\n".join(lines)


def _render(val: Any) -> str:
    if isinstance(val, (list, tuple)):
        return "[" + ", ".join(_render(v) for v in val) + "]"
    if isinstance(val, dict):
        return "{" + ", ".join(f"{k}: {_render(v)}" for k, v in val.items()) + "}"
    return str(val)
