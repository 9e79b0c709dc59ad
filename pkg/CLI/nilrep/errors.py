from __future__ import annotations

from typing import Any


class NilrepError(ValueError):
    """Base class for every error the toolkit raises on bad input or a broken construction."""

    kind = "Error"

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(message)
        self.details: dict[str, Any] = details

    def to_dict(self) -> dict[str, Any]:
        return {
            "valid": False,
            "error": self.kind,
            "message": str(self),
            "details": self.details,
        }


class ParseError(NilrepError):
    kind = "ParseError"


class DimensionMismatchError(NilrepError):
    kind = "DimensionMismatch"


class JacobiViolationError(NilrepError):
    kind = "JacobiViolation"

    def __init__(self, i: int, j: int, k: int, residual: list[str]) -> None:
        super().__init__(
            f"Jacobi identity fails for basis triple ({i}, {j}, {k})",
            i=i, j=j, k=k, residual=residual,
        )


class NotNilpotentError(NilrepError):
    kind = "NotNilpotent"


class BadParameterError(NilrepError):
    kind = "BadParameter"


class NotLinearFunctionalError(NilrepError):
    kind = "NotLinearFunctional"


class NotInvariantError(NilrepError):
    kind = "NotInvariant"


class DegreeBoundError(NilrepError):
    kind = "DegreeBound"
