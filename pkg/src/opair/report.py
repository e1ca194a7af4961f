from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckReport:
    """Outcome of an exact identity check over one or many cases.

    ``kind`` is "check" for identities that must hold (a failure is a real
    violation) and "verdict" for convention-sensitive claims that are only
    recorded.
    """

    name: str
    checked: int = 0
    failures: int = 0
    counterexample: dict[str, Any] | None = None
    details: dict[str, Any] = field(default_factory=dict)
    kind: str = "check"

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, **witness: Any) -> bool:
        self.checked += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = witness
        return ok

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.checked += other.checked
        self.failures += other.failures
        if self.counterexample is None and other.counterexample is not None:
            self.counterexample = other.counterexample
        return self

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "kind": self.kind,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
            "counterexample": _jsonable(self.counterexample),
            "details": _jsonable(self.details),
        }


def _jsonable(obj: Any) -> Any:
    from fractions import Fraction

    from .exact import Mat, Subspace

    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (Mat, Subspace)):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return str(obj)


jsonable = _jsonable
