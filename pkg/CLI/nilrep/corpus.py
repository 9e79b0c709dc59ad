"""Standard nilpotent Lie algebras.

Basis conventions (indices 1-based in names):
    abelian(n)          e1..en, every bracket zero; N = 1
    heisenberg(2k+1)    [e_i, e_{k+i}] = e_{2k+1}; N = 2
    strict_upper(n)     E_ij (i < j) ordered by j - i, then i; [E_ij, E_kl] = d_jk E_il - d_li E_kj; N = n - 1
    filiform(n)         [e1, e_i] = e_{i+1} for 2 <= i <= n-1; N = n - 1
    free_nilpotent_2_3  [e1, e2] = e3, [e1, e3] = e4, [e2, e3] = e5; N = 3
"""
from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import BadParameterError
from .lie import LieAlgebra

Structure = dict[tuple[int, int], list[Fraction]]


@dataclass(frozen=True)
class CorpusSpec:
    family: str
    parameter: Optional[int] = None

    def __str__(self) -> str:
        return self.family if self.parameter is None else f"{self.family}({self.parameter})"


def _single(dim: int, k: int, value: int = 1) -> list[Fraction]:
    out = [Fraction(0)] * dim
    out[k] = Fraction(value)
    return out


def abelian(n: int) -> LieAlgebra:
    if n < 1:
        raise BadParameterError(f"abelian needs n >= 1, got {n}", family="abelian", parameter=n)
    return LieAlgebra(n, None, {}, name=f"a{n}")


def heisenberg(dim: int) -> LieAlgebra:
    if dim < 3 or dim % 2 == 0:
        raise BadParameterError(f"heisenberg needs an odd dimension 2k+1 >= 3, got {dim}", family="heisenberg", parameter=dim)
    k = (dim - 1) // 2
    structure: Structure = {(i, k + i): _single(dim, dim - 1) for i in range(k)}
    return LieAlgebra(dim, None, structure, name=f"h{dim}")


def strict_upper(n: int) -> LieAlgebra:
    if n < 2:
        raise BadParameterError(f"strict_upper needs n >= 2, got {n}", family="strict_upper", parameter=n)
    positions = [(i, i + level) for level in range(1, n) for i in range(1, n - level + 1)]
    index = {pos: k for k, pos in enumerate(positions)}
    dim = len(positions)
    structure: Structure = {}
    for p, (i, j) in enumerate(positions):
        for q in range(p + 1, dim):
            c, d = positions[q]
            coeffs = [Fraction(0)] * dim
            if j == c:
                coeffs[index[(i, d)]] += 1
            if d == i:
                coeffs[index[(c, j)]] -= 1
            if any(coeffs):
                structure[(p, q)] = coeffs
    names = [f"E{i}{j}" if n < 10 else f"E{i}_{j}" for i, j in positions]
    return LieAlgebra(dim, names, structure, name=f"u{n}")


def filiform(n: int) -> LieAlgebra:
    if n < 3:
        raise BadParameterError(f"filiform needs n >= 3, got {n}", family="filiform", parameter=n)
    structure: Structure = {(0, i): _single(n, i + 1) for i in range(1, n - 1)}
    return LieAlgebra(n, None, structure, name=f"f{n}")


def free_nilpotent_2_3() -> LieAlgebra:
    structure: Structure = {(0, 1): _single(5, 2), (0, 2): _single(5, 3), (1, 2): _single(5, 4)}
    return LieAlgebra(5, ["x", "y", "[x,y]", "[x,[x,y]]", "[y,[x,y]]"], structure, name="fn23")


FAMILIES: dict[str, Callable[[int], LieAlgebra]] = {
    "abelian": abelian,
    "heisenberg": heisenberg,
    "strict_upper": strict_upper,
    "filiform": filiform,
}

DOCUMENTED_N: dict[str, Callable[[int], int]] = {
    "abelian": lambda n: 1,
    "heisenberg": lambda n: 2,
    "strict_upper": lambda n: n - 1,
    "filiform": lambda n: n - 1,
    "free_nilpotent_2_3": lambda n: 3,
}

FAMILY_NAMES = (*FAMILIES, "free_nilpotent_2_3")

STANDARD_CORPUS = (
    CorpusSpec("abelian", 1),
    CorpusSpec("abelian", 2),
    CorpusSpec("abelian", 3),
    CorpusSpec("abelian", 4),
    CorpusSpec("heisenberg", 3),
    CorpusSpec("heisenberg", 5),
    CorpusSpec("strict_upper", 3),
    CorpusSpec("strict_upper", 4),
    CorpusSpec("filiform", 4),
    CorpusSpec("filiform", 5),
    CorpusSpec("free_nilpotent_2_3"),
)


def make(entry: CorpusSpec) -> LieAlgebra:
    if entry.family == "free_nilpotent_2_3":
        if entry.parameter is not None:
            raise BadParameterError("free_nilpotent_2_3 takes no parameter", family=entry.family, parameter=entry.parameter)
        return free_nilpotent_2_3()
    builder = FAMILIES.get(entry.family)
    if builder is None:
        raise BadParameterError(f"Unknown family '{entry.family}'. Choose from: {', '.join(FAMILY_NAMES)}", family=entry.family)
    if entry.parameter is None:
        raise BadParameterError(f"{entry.family} needs a size parameter", family=entry.family)
    return builder(entry.parameter)


def documented_N(entry: CorpusSpec) -> int:
    return DOCUMENTED_N[entry.family](entry.parameter or 0)
