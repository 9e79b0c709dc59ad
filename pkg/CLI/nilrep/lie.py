from __future__ import annotations

import json
from collections.abc import Mapping, Sequence
from fractions import Fraction
from typing import Any, Optional, TypeVar

from .errors import (
    BadParameterError,
    DimensionMismatchError,
    JacobiViolationError,
    NotNilpotentError,
    ParseError,
)
from .linalg import (
    Matrix,
    RationalLike,
    Vector,
    echelon_basis,
    extend_basis,
    format_rational,
    kernel_basis,
    parse_rational,
    span_contains,
    to_vector,
    unit_vector,
    zero_vector,
)
from .models import CheckResult
from .poly import PolyFun
from .utils import random_element, sampler

Scalar = TypeVar("Scalar", Fraction, PolyFun)


def zero_like(value: Scalar) -> Scalar:
    if isinstance(value, PolyFun):
        return PolyFun.zero(value.nvars)
    return Fraction(0)


class LieAlgebra:
    """Finite-dimensional nilpotent Lie algebra given by structure constants [e_i, e_j] = sum_k c_ij^k e_k.

    Only pairs i < j are stored; antisymmetry is supplied by `bracket`. Construction validates
    the Jacobi identity and nilpotency and caches the lower central series and the nilpotency
    degree N (g^(N) != 0 = g^(N+1)).
    """

    name: str
    dim: int
    basis_names: tuple[str, ...]
    structure: dict[tuple[int, int], Vector]
    lcs: tuple[tuple[Vector, ...], ...]
    N: int

    def __init__(self, dim: int, names: Sequence[str] | None, structure: Mapping[tuple[int, int], Sequence[RationalLike]], name: str = "g") -> None:
        if dim < 1:
            raise BadParameterError(f"Algebra dimension must be >= 1, got {dim}", dim=dim)
        labels = tuple(names) if names is not None else tuple(f"e{i + 1}" for i in range(dim))
        if len(labels) != dim:
            raise DimensionMismatchError(f"Expected {dim} basis names, got {len(labels)}", dim=dim, names=len(labels))

        clean: dict[tuple[int, int], Vector] = {}
        for (i, j), coeffs in structure.items():
            if not 0 <= i < j < dim:
                raise BadParameterError(f"Bracket pair ({i}, {j}) must satisfy 0 <= i < j < {dim}", i=i, j=j)
            if len(coeffs) != dim:
                raise DimensionMismatchError(f"Bracket [{i}, {j}] has {len(coeffs)} coefficients, expected {dim}", i=i, j=j)
            vector = to_vector(coeffs)
            if any(vector):
                clean[(i, j)] = vector

        self.name = name
        self.dim = dim
        self.basis_names = labels
        self.structure = dict(sorted(clean.items()))
        self._table = [
            (pair, [(k, c) for k, c in enumerate(vector) if c]) for pair, vector in self.structure.items()
        ]
        self._check_jacobi()
        self.lcs = self._compute_lcs()
        self.N = len(self.lcs) - 1

    def __repr__(self) -> str:
        return f"LieAlgebra(name={self.name!r}, dim={self.dim}, N={self.N})"

    def element(self, coords: Sequence[RationalLike]) -> Vector:
        if len(coords) != self.dim:
            raise DimensionMismatchError(f"Element has {len(coords)} coordinates, algebra dimension is {self.dim}", dim=self.dim, got=len(coords))
        return to_vector(coords)

    def basis_vector(self, index: int) -> Vector:
        return unit_vector(self.dim, index)

    def zero(self) -> Vector:
        return zero_vector(self.dim)

    def basis_bracket(self, i: int, j: int) -> Vector:
        if i < j:
            return self.structure.get((i, j), self.zero())
        if i > j:
            return tuple(-c for c in self.structure.get((j, i), self.zero()))
        return self.zero()

    def bracket(self, a: Sequence[Scalar], b: Sequence[Scalar]) -> tuple[Scalar, ...]:
        """Bilinear extension of the structure constants; entries may be rationals or polynomials."""
        if len(a) != self.dim or len(b) != self.dim:
            raise DimensionMismatchError(
                f"Bracket of elements with {len(a)} and {len(b)} coordinates in a {self.dim}-dimensional algebra",
                dim=self.dim, left=len(a), right=len(b),
            )
        out = [zero_like(a[0]) for _ in range(self.dim)]
        for (i, j), column in self._table:
            ai, aj, bi, bj = a[i], a[j], b[i], b[j]
            if not ((ai or aj) and (bi or bj)):
                continue
            factor = ai * bj - aj * bi
            if not factor:
                continue
            for k, c in column:
                out[k] = out[k] + factor * c
        return tuple(out)

    def ad_matrix(self, x: Sequence[RationalLike]) -> Matrix:
        x = self.element(x)
        return Matrix.from_columns([self.bracket(x, self.basis_vector(j)) for j in range(self.dim)], rows=self.dim)

    def _check_jacobi(self) -> None:
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(j + 1, self.dim):
                    residual = [
                        a + b + c for a, b, c in zip(
                            self.bracket(self.basis_vector(i), self.basis_bracket(j, k)),
                            self.bracket(self.basis_vector(j), self.basis_bracket(k, i)),
                            self.bracket(self.basis_vector(k), self.basis_bracket(i, j)),
                        )
                    ]
                    if any(residual):
                        raise JacobiViolationError(i, j, k, [format_rational(v) for v in residual])

    def _compute_lcs(self) -> tuple[tuple[Vector, ...], ...]:
        current = echelon_basis(self.basis_vector(i) for i in range(self.dim))
        series = [current]
        while current:
            following = echelon_basis(
                self.bracket(self.basis_vector(i), v) for i in range(self.dim) for v in current
            )
            if len(following) == len(current):
                raise NotNilpotentError(
                    f"Lower central series stabilises at a subspace of dimension {len(current)}",
                    stable_dim=len(current), term=len(series),
                )
            series.append(following)
            current = following
        return tuple(series)

    def lower_central_series(self) -> tuple[tuple[Vector, ...], ...]:
        """Echelon bases of g^(1) = g, g^(2), ..., g^(N+1) = {0}."""
        return self.lcs

    def lcs_dims(self) -> list[int]:
        return [len(term) for term in self.lcs]

    @property
    def rep_bound(self) -> int:
        """Nilpotence bound 2^(N-1) N + 1 of the faithful representation."""
        return 2 ** (self.N - 1) * self.N + 1

    def center(self) -> tuple[Vector, ...]:
        stacked = [row for j in range(self.dim) for row in self.ad_matrix(self.basis_vector(j)).to_rows()]
        return echelon_basis(kernel_basis(Matrix.from_rows(stacked, cols=self.dim)))

    def subalgebra_dim_bound(self, q: int) -> int:
        """sum_{r=0}^{N-1} q^(r+1): the size of the bracket-word spanning set for q generators."""
        return sum(q ** (r + 1) for r in range(self.N))

    def generated_subalgebra(self, generators: Sequence[Sequence[RationalLike]]) -> tuple[Vector, ...]:
        """Echelon basis of span(S and (ad v_r)...(ad v_1) w for v_i, w in S, 1 <= r <= N-1)."""
        if not generators:
            raise BadParameterError("The generating set must be nonempty")
        elements = [self.element(s) for s in generators]
        spanning = list(elements)
        level = list(elements)
        for _ in range(1, self.N):
            level = [self.bracket(v, u) for u in level for v in elements]
            spanning.extend(level)
        return echelon_basis(spanning)

    def bracket_closure(self, generators: Sequence[Sequence[RationalLike]]) -> tuple[Vector, ...]:
        """Generated subalgebra by repeated bracketing until the span stops growing."""
        basis = echelon_basis(self.element(s) for s in generators)
        while True:
            basis, added = extend_basis(basis, [self.bracket(u, v) for u in basis for v in basis])
            if not added:
                return basis

    def is_subalgebra(self, basis: Sequence[Vector]) -> bool:
        return all(span_contains(basis, self.bracket(u, v)) for u in basis for v in basis)

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "dim": self.dim,
            "basis": list(self.basis_names),
            "brackets": [
                {"i": i, "j": j, "coeffs": [format_rational(c) for c in vector]}
                for (i, j), vector in self.structure.items()
            ],
        }

    @classmethod
    def from_json(cls, doc: Any, max_dim: Optional[int] = None) -> LieAlgebra:
        """Validates a parsed algebra document. 'dim' is checked against max_dim before any bracket is read."""
        if not isinstance(doc, dict):
            raise ParseError("Algebra document must be a JSON object")
        try:
            name = doc.get("name", "g")
            dim = doc["dim"]
            names = doc.get("basis")
            entries = doc.get("brackets", [])
        except KeyError as e:
            raise ParseError(f"Algebra document is missing {e}") from None
        if not isinstance(dim, int) or isinstance(dim, bool):
            raise ParseError("'dim' must be an integer")
        if max_dim is not None and dim > max_dim:
            raise BadParameterError(
                f"Algebra dimension {dim} exceeds the limit {max_dim} (raise NILREP_MAX_DIM to allow it)",
                dim=dim, max_dim=max_dim,
            )
        if not isinstance(name, str):
            raise ParseError("'name' must be a string")
        if names is not None and (not isinstance(names, list) or not all(isinstance(n, str) for n in names)):
            raise ParseError("'basis' must be a list of strings")
        if not isinstance(entries, list):
            raise ParseError("'brackets' must be a list")

        structure: dict[tuple[int, int], list[Fraction]] = {}
        for entry in entries:
            try:
                i, j, coeffs = entry["i"], entry["j"], entry["coeffs"]
            except (KeyError, TypeError):
                raise ParseError("Every bracket entry needs 'i', 'j' and 'coeffs'") from None
            if not all(isinstance(v, int) and not isinstance(v, bool) for v in (i, j)):
                raise ParseError("Bracket indices must be integers", i=str(i), j=str(j))
            if not 0 <= i < j < dim:
                raise ParseError(f"Bracket indices must satisfy 0 <= i < j < {dim}", i=i, j=j)
            if (i, j) in structure:
                raise ParseError(f"Bracket ({i}, {j}) is given twice", i=i, j=j)
            if not isinstance(coeffs, list) or len(coeffs) != dim:
                raise ParseError(f"Bracket ({i}, {j}) needs {dim} coefficients", i=i, j=j)
            structure[(i, j)] = [parse_rational(c) for c in coeffs]
        return cls(dim, names, structure, name=name)


def load_algebra(path: str, max_dim: Optional[int] = None) -> LieAlgebra:
    try:
        with open(path, encoding="utf-8") as f:
            doc = json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(f"Invalid JSON in '{path}': {e}", path=path) from None
    except OSError as e:
        raise ParseError(f"Cannot read '{path}': {e}", path=path) from None
    return LieAlgebra.from_json(doc, max_dim)


def subalgebra_check(g: LieAlgebra, samples: int, seed: int, height: int = 3) -> list[CheckResult]:
    """Bracket-word spans of sampled sets S with |S| in {1, 2, 3}: size bound, closure, and agreement with iterated bracketing."""
    rng = sampler(seed, "subalgebra")
    bound = CheckResult("lie.subalgebra_bound")
    closed = CheckResult("lie.subalgebra_closed")
    closure = CheckResult("lie.subalgebra_closure")
    for trial in range(samples):
        q = trial % 3 + 1
        generators = [random_element(rng, g.dim, height) for _ in range(q)]
        basis = g.generated_subalgebra(generators)
        limit = g.subalgebra_dim_bound(q)
        bound.record(len(basis) <= limit, generators=generators, dim=len(basis), bound=limit)
        if q == 2:
            bound.measure_max("pair_dim", len(basis))
        closed.record(g.is_subalgebra(basis), generators=generators, basis=basis)
        iterated = g.bracket_closure(generators)
        closure.record(iterated == basis, generators=generators, observed=basis, expected=iterated)
    return [bound, closed, closure]
