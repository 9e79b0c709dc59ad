from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .linalg import Matrix, format_rational
from .poly import PolyFun


def to_jsonable(value: Any) -> Any:
    """Converts rationals, vectors, polynomials and matrices into plain JSON values."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, PolyFun):
        return value.to_json()
    if isinstance(value, Matrix):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return str(value)


@dataclass
class CheckResult:
    """Outcome of one exact identity check over a number of trials.

    Only the first failing trial is kept as the counterexample.
    """

    name: str
    passed: bool = True
    trials: int = 0
    counterexample: Optional[dict[str, Any]] = None
    measured: dict[str, Any] = field(default_factory=dict)

    def record(self, ok: bool, **payload: Any) -> bool:
        self.trials += 1
        if not ok and self.passed:
            self.passed = False
            self.counterexample = {k: to_jsonable(v) for k, v in payload.items()}
        return ok

    def measure_max(self, key: str, value: int) -> None:
        self.measured[key] = max(self.measured.get(key, value), value)

    def to_json(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"name": self.name, "passed": self.passed, "trials": self.trials}
        if self.measured:
            doc["measured"] = dict(self.measured)
        if self.counterexample is not None:
            doc["counterexample"] = self.counterexample
        return doc


@dataclass
class VerificationReport:
    algebra: str
    dim_g: int
    N: int
    bound: int
    dim_FG: int
    samples: int
    seed: int
    max_nilpotence_index: int = 0
    max_unipotence_index: int = 0
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failed_checks(self) -> list[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def to_json(self) -> dict[str, Any]:
        return {
            "algebra": self.algebra,
            "dim_g": self.dim_g,
            "N": self.N,
            "bound": self.bound,
            "dim_FG": self.dim_FG,
            "max_nilpotence_index": self.max_nilpotence_index,
            "max_unipotence_index": self.max_unipotence_index,
            "samples": self.samples,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [check.to_json() for check in self.checks],
        }

    def to_row(self) -> ReportRow:
        return ReportRow(self.algebra, self.dim_g, self.N, self.dim_FG, self.max_nilpotence_index, self.bound, self.passed)


@dataclass
class ReportRow:
    __slots__ = 'name', 'dim_g', 'N', 'dim_FG', 'measured_index', 'bound', 'passed'
    name: str
    dim_g: int
    N: int
    dim_FG: int
    measured_index: int
    bound: int
    passed: bool

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "dim_g": self.dim_g,
            "N": self.N,
            "dim_FG": self.dim_FG,
            "measured_index": self.measured_index,
            "bound": self.bound,
            "passed": self.passed,
        }

    def cells(self) -> list[str]:
        return [self.name, str(self.dim_g), str(self.N), str(self.dim_FG), str(self.measured_index), str(self.bound), "pass" if self.passed else "fail"]
