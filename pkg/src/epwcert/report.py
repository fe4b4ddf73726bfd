"""Structured outcome of one named verification."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exact import DenseMatrix, GaussianRational, format_scalar

PASS, FAIL, ERROR = "pass", "fail", "error"


@dataclass
class CheckReport:
    id: str
    status: str
    millis: int
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        return {"id": self.id, "status": self.status, "millis": self.millis, "details": jsonable(self.details)}


def jsonable(value: Any) -> Any:
    """Convert exact scalars, tuples, sets and matrices into plain JSON values."""
    if isinstance(value, GaussianRational):
        return format_scalar(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, DenseMatrix):
        return [[format_scalar(x) for x in value.row(i)] for i in range(value.rows)]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted((jsonable(v) for v in value), key=repr)
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    return str(value)


class Recorder:
    """Accumulates named observations and failed expectations for one check."""

    def __init__(self, check_id: str):
        self.id = check_id
        self.details: dict = {}
        self.failures: list[str] = []
        self._start = time.perf_counter()

    def note(self, name: str, value: Any) -> Any:
        self.details[name] = value
        return value

    def expect(self, name: str, actual: Any, expected: Any) -> bool:
        self.details[name] = actual
        if actual != expected:
            self.failures.append(f"{name}: expected {jsonable(expected)!r}, got {jsonable(actual)!r}")
            return False
        return True

    def require(self, name: str, condition: bool, witness: Any = None) -> bool:
        if not condition:
            msg = name if witness is None else f"{name}: {jsonable(witness)!r}"
            self.failures.append(msg)
        return bool(condition)

    def report(self) -> CheckReport:
        millis = int((time.perf_counter() - self._start) * 1000)
        details = dict(self.details)
        if self.failures:
            details["failures"] = list(self.failures)
        return CheckReport(self.id, FAIL if self.failures else PASS, millis, details)
