"""Check reports: per-item pass/fail with witnesses, serializable to JSON."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "tolist"):
        return _jsonable(value.tolist())
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return value
    return value


@dataclass
class CheckItem:
    """One verified statement: an axiom, an identity, or a classification."""

    name: str
    passed: bool
    worst_violation: float = 0.0
    tolerance: float = 0.0
    witness: dict | None = None
    path: str = "exact"

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "passed": bool(self.passed),
            "worst_violation": _jsonable(self.worst_violation),
            "tolerance": self.tolerance,
            "path": self.path,
        }
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        return out


@dataclass
class CheckReport:
    title: str
    seed: int | None = None
    sample_count: int | None = None
    items: list[CheckItem] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)

    def add(
        self,
        name: str,
        passed: bool,
        worst_violation: float = 0.0,
        tolerance: float = 0.0,
        witness: dict | None = None,
        path: str = "exact",
    ) -> CheckItem:
        item = CheckItem(name, bool(passed), worst_violation, tolerance, witness, path)
        self.items.append(item)
        return item

    def item(self, name: str) -> CheckItem:
        for it in self.items:
            if it.name == name:
                return it
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "seed": self.seed,
            "sample_count": self.sample_count,
            "items": [item.to_dict() for item in self.items],
            "notes": list(self.notes),
        }

    def to_json(self, pretty: bool = False) -> str:
        if pretty:
            return json.dumps(self.to_dict(), indent=2, sort_keys=True)
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def summary(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for item in self.items:
            status = "pass" if item.passed else "FAIL"
            lines.append(
                f"  [{status}] {item.name}"
                f" (worst={item.worst_violation:.3g}, tol={item.tolerance:.3g}, {item.path})"
            )
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)
