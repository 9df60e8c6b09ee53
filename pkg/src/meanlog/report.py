"""Verification reports and their JSON / CSV serialization.

JSON field names are a public contract:

``check_name``  identifier of the check
``reference``   the claim being checked, in words
``expected``    number, or a string describing a bound/expression
``computed``    the value produced by this library
``tolerance``   allowed deviation, interpreted according to ``kind``
``kind``        "abs", "rel", "exact" or "bound"
``passed``      outcome
``runtime_ms``  wall-clock time of the check (not deterministic)
``details``     free-form extra numbers (JSON object)
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any

KINDS = ("abs", "rel", "exact", "bound")


@dataclass(frozen=True)
class VerificationReport:
    check_name: str
    reference: str
    expected: float | str
    computed: float
    tolerance: float
    passed: bool
    kind: str = "abs"
    runtime_ms: int = 0
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.runtime_ms < 0:
            raise ValueError("runtime_ms must be nonnegative")

    @property
    def error(self) -> float | None:
        if isinstance(self.expected, str):
            return None
        diff = abs(self.computed - self.expected)
        if self.kind == "rel":
            return diff / abs(self.expected) if self.expected else diff
        return diff

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "VerificationReport":
        return cls(**data)


def compare(check_name: str, reference: str, expected: float, computed: float,
            tolerance: float, kind: str = "abs", runtime_ms: int = 0,
            **details: Any) -> VerificationReport:
    """Build a report whose ``passed`` is |computed - expected| <= tolerance."""
    if kind == "exact":
        ok = computed == expected
    else:
        diff = abs(computed - expected)
        if kind == "rel":
            diff = diff / abs(expected) if expected else diff
        ok = diff <= tolerance
    if isinstance(computed, float) and not math.isfinite(computed):
        ok = False
    return VerificationReport(check_name, reference, expected, computed, tolerance,
                              bool(ok), kind, runtime_ms, dict(details))


def _clean(obj: Any) -> Any:
    # numpy scalars and non-finite floats are not valid JSON
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj


def dumps(reports: list[VerificationReport]) -> str:
    payload = {"reports": [_clean(r.to_dict()) for r in reports],
               "passed": all(r.passed for r in reports)}
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def loads(text: str) -> list[VerificationReport]:
    return [VerificationReport.from_dict(d) for d in json.loads(text)["reports"]]


CSV_FIELDS = ("check_name", "reference", "expected", "computed", "tolerance",
              "kind", "passed", "runtime_ms")


def to_csv(reports: list[VerificationReport]) -> str:
    """Flat CSV export; ``details`` is dropped."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for r in reports:
        writer.writerow([repr(v) if isinstance(v, float) else v
                         for v in (getattr(r, f) for f in CSV_FIELDS)])
    return buf.getvalue()
