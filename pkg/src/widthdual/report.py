"""Outcome of a property check."""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import elements


@dataclass(frozen=True)
class PropertyReport:
    """``holds`` plus, when it does not, the instance that breaks the property."""

    holds: bool
    counterexample: dict | None = field(default=None)
    name: str = ""

    def __post_init__(self):
        if self.holds == (self.counterexample is not None):
            raise ValueError("a counterexample is present exactly when the property fails")

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        out = {"property": self.name, "holds": self.holds}
        if self.counterexample is not None:
            out["counterexample"] = {k: _jsonable(v) for k, v in self.counterexample.items()}
        return out


def _jsonable(v):
    # bare ints in counterexamples are subset masks
    if hasattr(v, "to_json"):
        return v.to_json()
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, int):
        return list(elements(v))
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


def holds(name: str = "") -> PropertyReport:
    return PropertyReport(True, None, name)


def fails(name: str = "", **counterexample) -> PropertyReport:
    return PropertyReport(False, counterexample, name)
