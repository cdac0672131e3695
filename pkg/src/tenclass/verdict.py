from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np


class Status(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class ClassVerdict:
    """Outcome of a class-membership test.

    ``index`` is the first violating row (1-based) when the test fails on a
    specific row, and ``details`` carries witnesses such as the Lambda vector.
    """

    name: str
    status: Status
    index: int | None = None
    reason: str = ""
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"verdict": self.status.value}
        if self.index is not None:
            out["index"] = self.index
        if self.reason:
            out["reason"] = self.reason
        for key, value in self.details.items():
            out[key] = jsonable(value)
        return out


def jsonable(value):
    """Convert numpy scalars/arrays and nested containers to plain JSON types."""
    if isinstance(value, np.ndarray):
        return [jsonable(x) for x in value.tolist()]
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(x) for x in value]
    if hasattr(value, "to_dict"):
        return value.to_dict()
    return value


def holds(name: str, **details) -> ClassVerdict:
    return ClassVerdict(name, Status.HOLDS, details=details)


def fails(name: str, index: int | None = None, reason: str = "", **details) -> ClassVerdict:
    return ClassVerdict(name, Status.FAILS, index=index, reason=reason, details=details)


def not_applicable(name: str, reason: str = "", **details) -> ClassVerdict:
    return ClassVerdict(name, Status.NOT_APPLICABLE, reason=reason, details=details)
