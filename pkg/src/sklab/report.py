"""Machine-readable run records."""
from __future__ import annotations

import json
import math
import os
import tempfile
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from typing import Any

TOOL_VERSION = "sklab-0.1.0"


@dataclass
class NumericReport:
    command: str
    inputs: dict[str, Any]
    outcome: str  # "pass" or "fail"
    details: dict[str, Any] = field(default_factory=dict)
    max_deviation: float | None = None
    runtime_ms: int = 0
    tool_version: str = TOOL_VERSION

    @property
    def passed(self) -> bool:
        return self.outcome == "pass"

    def to_dict(self, *, timing: bool = True) -> dict[str, Any]:
        d = asdict(self)
        if not timing:
            d["runtime_ms"] = 0
        return _jsonable(d)

    def to_json(self, *, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing=timing), sort_keys=True, indent=2)


def outcome(ok: bool) -> str:
    return "pass" if ok else "fail"


def combine(command: str, inputs: dict, subreports: dict[str, NumericReport]) -> NumericReport:
    """Aggregate sub-check reports; passes only if every child passes."""
    devs = [r.max_deviation for r in subreports.values() if r.max_deviation is not None]
    return NumericReport(
        command=command,
        inputs=inputs,
        outcome=outcome(all(r.passed for r in subreports.values())),
        details={name: r.to_dict(timing=False) for name, r in subreports.items()},
        max_deviation=max(devs) if devs else None,
        runtime_ms=sum(r.runtime_ms for r in subreports.values()),
    )


@contextmanager
def timer():
    box = {"ms": 0}
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box["ms"] = int(round(1000 * (time.perf_counter() - t0)))


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, float):
        if math.isnan(x) or math.isinf(x):
            return str(x)
        return x
    if isinstance(x, complex):
        return [x.real, x.imag]
    if hasattr(x, "numerator") and hasattr(x, "denominator") and not isinstance(x, (int, bool)):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if hasattr(x, "item"):  # numpy scalars
        return _jsonable(x.item())
    return x


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".sklab-", suffix=".json")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
        fh.write("\n")
    os.replace(tmp, path)
