from __future__ import annotations

import bisect
import re
import sys
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import NamedTuple, Optional, Union

from .errors import DimensionMismatchError, NotNilpotentError, ParseError

Vector = tuple[Fraction, ...]
RationalLike = Union[Fraction, int]

_RATIONAL_PATTERN = re.compile(r"-?[0-9]+(?:/[0-9]+)?")

# Coefficients are unbounded integers, in both directions of the text format.
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)


def parse_rational(text: str) -> Fraction:
    """Parses '-1/12', '3', '0', ... The denominator, when present, must be positive."""
    if not isinstance(text, str) or not _RATIONAL_PATTERN.fullmatch(text):
        raise ParseError(f"Malformed rational '{text}'", value=str(text))
    numerator, _, denominator = text.partition("/")
    if denominator and int(denominator) == 0:
        raise ParseError(f"Zero denominator in rational '{text}'", value=text)
    return Fraction(int(numerator), int(denominator) if denominator else 1)


def format_rational(value: RationalLike) -> str:
    return str(Fraction(value))


def as_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, (Fraction, int)) and not isinstance(value, bool):
        return Fraction(value)
    raise TypeError(f"Exact rational expected, got {type(value).__name__}")


def to_vector(values: Iterable[RationalLike]) -> Vector:
    return tuple(as_fraction(v) for v in values)


def zero_vector(length: int) -> Vector:
    return (Fraction(0),) * length


def unit_vector(length: int, index: int) -> Vector:
    return tuple(Fraction(1) if k == index else Fraction(0) for k in range(length))


def leading_index(vector: Sequence[Fraction]) -> Optional[int]:
    return next((k for k, value in enumerate(vector) if value), None)


@dataclass(frozen=True)
class Matrix:
    """Dense row-major matrix over the rationals."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"Matrix of shape {self.rows}x{self.cols} needs {self.rows * self.cols} entries, got {len(self.entries)}",
                rows=self.rows, cols=self.cols, entries=len(self.entries),
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[RationalLike]], cols: int | None = None) -> Matrix:
        width = len(rows[0]) if rows else (cols or 0)
        for row in rows:
            if len(row) != width:
                raise DimensionMismatchError("Every row must have the same number of entries", expected=width, got=len(row))
        return cls(len(rows), width, tuple(as_fraction(v) for row in rows for v in row))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[RationalLike]], rows: int | None = None) -> Matrix:
        height = len(columns[0]) if columns else (rows or 0)
        return cls.from_rows([[col[i] for col in columns] for i in range(height)], cols=len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, size: int) -> Matrix:
        return cls(size, size, tuple(Fraction(1) if i == j else Fraction(0) for i in range(size) for j in range(size)))

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i * self.cols + j]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def transpose(self) -> Matrix:
        return Matrix(self.cols, self.rows, tuple(v for j in range(self.cols) for v in self.column(j)))

    def _check_same_shape(self, other: Matrix) -> None:
        if self.shape != other.shape:
            raise DimensionMismatchError(f"Shapes {self.shape} and {other.shape} differ", left=list(self.shape), right=list(other.shape))

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> Matrix:
        return Matrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def __mul__(self, scalar: RationalLike) -> Matrix:
        factor = as_fraction(scalar)
        return Matrix(self.rows, self.cols, tuple(a * factor for a in self.entries))

    __rmul__ = __mul__

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise DimensionMismatchError(f"Cannot multiply {self.shape} by {other.shape}", left=list(self.shape), right=list(other.shape))
        other_columns = [other.column(j) for j in range(other.cols)]
        out: list[Fraction] = []
        for i in range(self.rows):
            nonzero = [(k, a) for k, a in enumerate(self.row(i)) if a]
            for col in other_columns:
                out.append(sum((a * col[k] for k, a in nonzero), Fraction(0)))
        return Matrix(self.rows, other.cols, tuple(out))

    def apply(self, vector: Sequence[Fraction]) -> Vector:
        if len(vector) != self.cols:
            raise DimensionMismatchError(f"Vector of length {len(vector)} does not fit {self.shape}", cols=self.cols, got=len(vector))
        nonzero = [(k, v) for k, v in enumerate(vector) if v]
        return tuple(sum((self[i, k] * v for k, v in nonzero), Fraction(0)) for i in range(self.rows))

    def power(self, exponent: int) -> Matrix:
        result = Matrix.identity(self.rows)
        for _ in range(exponent):
            result = result @ self
        return result

    def to_json(self) -> list[list[str]]:
        return [[format_rational(v) for v in self.row(i)] for i in range(self.rows)]


class RowEchelon(NamedTuple):
    matrix: Matrix
    rank: int
    pivots: tuple[int, ...]


def rref(m: Matrix) -> RowEchelon:
    rows = m.to_rows()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        pivot_row = next((i for i in range(r, m.rows) if rows[i][c]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        lead = rows[r][c]
        if lead != 1:
            rows[r] = [v / lead for v in rows[r]]
        for i in range(m.rows):
            factor = rows[i][c]
            if i != r and factor:
                rows[i] = [a - factor * b if b else a for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return RowEchelon(Matrix.from_rows(rows, cols=m.cols), r, tuple(pivots))


def rank(m: Matrix) -> int:
    return rref(m).rank


def kernel_basis(m: Matrix) -> list[Vector]:
    reduced, _, pivots = rref(m)
    pivot_set = set(pivots)
    basis: list[Vector] = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[free] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -reduced[r, free]
        basis.append(tuple(v))
    return basis


def reduce_vector(basis: Sequence[Vector], vector: Sequence[Fraction]) -> Vector:
    """Remainder of `vector` after clearing the pivot columns of a reduced echelon basis."""
    out = tuple(vector)
    for row in basis:
        if len(row) != len(out):
            raise DimensionMismatchError("Basis and vector lengths differ", basis=len(row), vector=len(out))
        pivot = leading_index(row)
        if pivot is None:
            continue
        factor = out[pivot]
        if factor:
            out = tuple(a - factor * b if b else a for a, b in zip(out, row))
    return out


def span_contains(basis: Sequence[Vector], vector: Sequence[Fraction]) -> bool:
    return not any(reduce_vector(basis, vector))


def echelon_coordinates(basis: Sequence[Vector], vector: Sequence[Fraction]) -> Optional[Vector]:
    """Coordinates of `vector` in a reduced echelon basis, or None when it lies outside the span."""
    if any(reduce_vector(basis, vector)):
        return None
    return tuple(vector[leading_index(row) or 0] for row in basis)


def extend_basis(current: Sequence[Vector], candidates: Iterable[Sequence[Fraction]]) -> tuple[tuple[Vector, ...], int]:
    """Adds candidates to a reduced echelon basis; returns the new basis and the dimension growth."""
    basis = [tuple(row) for row in current]
    pivots = [leading_index(row) or 0 for row in basis]
    added = 0
    for candidate in candidates:
        remainder = reduce_vector(basis, candidate)
        pivot = leading_index(remainder)
        if pivot is None:
            continue
        lead = remainder[pivot]
        new_row = tuple(v / lead if v else v for v in remainder)
        for k, row in enumerate(basis):
            factor = row[pivot]
            if factor:
                basis[k] = tuple(a - factor * b if b else a for a, b in zip(row, new_row))
        slot = bisect.bisect_left(pivots, pivot)
        basis.insert(slot, new_row)
        pivots.insert(slot, pivot)
        added += 1
    return tuple(basis), added


def echelon_basis(vectors: Iterable[Sequence[Fraction]]) -> tuple[Vector, ...]:
    return extend_basis((), vectors)[0]


def nilpotency_index(m: Matrix, limit: int) -> Optional[int]:
    """Smallest k <= limit with m^k = 0, or None."""
    power = Matrix.identity(m.rows)
    for k in range(1, limit + 1):
        power = power @ m
        if power.is_zero():
            return k
    return None


def exp_nilpotent(m: Matrix, index_bound: int) -> Matrix:
    """Exact exponential sum_{k < index_bound} m^k / k! of a matrix with m^index_bound = 0."""
    if not m.is_square:
        raise DimensionMismatchError(f"Exponential needs a square matrix, got {m.shape}", rows=m.rows, cols=m.cols)
    if index_bound < 1:
        raise NotNilpotentError(f"Index bound must be positive, got {index_bound}", index_bound=index_bound)
    total = Matrix.identity(m.rows)
    power = Matrix.identity(m.rows)
    for k in range(1, index_bound + 1):
        power = power @ m
        if power.is_zero():
            return total
        if k == index_bound:
            break
        total = total + power * Fraction(1, factorial(k))
    raise NotNilpotentError(f"Matrix power {index_bound} is not zero", index_bound=index_bound)
