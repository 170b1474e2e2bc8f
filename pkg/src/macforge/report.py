"""Machine-readable verification reports.

Schema (stable field order, CI-diffable):
  {"version": ..., "params": {...}, "checks": [
     {"name": ..., "expected": ..., "actual": ..., "pass": ..., "elapsed_ms": ...},
   ...], "pass": ...}

A check with expected = null is recorded but not judged (pass is true
vacuously); overall pass is the conjunction of all check passes.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

VERSION = "0.1.0"

PASS_GLYPH = "ok"
FAIL_GLYPH = "FAIL"


def _jsonable(v):
    if v is None or isinstance(v, (bool, int, str, float)):
        return v
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return str(v)


@dataclass
class Check:
    name: str
    expected: object
    actual: object
    passed: bool
    elapsed_ms: float = 0.0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "expected": _jsonable(self.expected),
            "actual": _jsonable(self.actual),
            "pass": bool(self.passed),
            "elapsed_ms": round(float(self.elapsed_ms), 3),
        }


@dataclass
class Report:
    params: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    version: str = VERSION

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, expected, actual, passed=None, elapsed_ms: float = 0.0) -> Check:
        if passed is None:
            passed = True if expected is None else expected == actual
        c = Check(name, expected, actual, bool(passed), elapsed_ms)
        self.checks.append(c)
        return c

    def timed(self, name: str, expected, fn) -> Check:
        """Run fn(), record elapsed time and compare its value to expected."""
        t0 = time.perf_counter()
        actual = fn()
        dt = (time.perf_counter() - t0) * 1000.0
        return self.add(name, expected, actual, elapsed_ms=dt)

    def extend(self, other: "Report"):
        self.checks.extend(other.checks)

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "params": _jsonable(self.params),
            "checks": [c.to_dict() for c in self.checks],
            "pass": self.passed,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        rep = cls(params=d.get("params", {}), version=d.get("version", VERSION))
        for c in d.get("checks", []):
            rep.add(
                c["name"], c.get("expected"), c.get("actual"),
                passed=c.get("pass"), elapsed_ms=c.get("elapsed_ms", 0.0),
            )
        return rep

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        lines = [f"macforge {self.version}  params: {json.dumps(_jsonable(self.params))}"]
        width = max([len(c.name) for c in self.checks], default=10)
        for c in self.checks:
            glyph = PASS_GLYPH if c.passed else FAIL_GLYPH
            exp = "-" if c.expected is None else str(_jsonable(c.expected))
            lines.append(
                f"  [{glyph:>4}] {c.name:<{width}}  expected={exp}  actual={_jsonable(c.actual)}"
            )
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'} ({len(self.checks)} checks)")
        return "\n".join(lines)
