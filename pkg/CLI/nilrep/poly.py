from __future__ import annotations

from collections.abc import Iterator, Mapping, Sequence
from fractions import Fraction
from math import comb
from typing import Any, Union

from .errors import DegreeBoundError, DimensionMismatchError, ParseError
from .linalg import RationalLike, Vector, as_fraction, format_rational, parse_rational

Exponent = tuple[int, ...]


def grlex_key(exponent: Exponent) -> tuple[int, Exponent]:
    """Graded lexicographic key: total degree first, then exponents lexicographically (y1 > y2 > ...)."""
    return sum(exponent), exponent


def exponents_of_degree(nvars: int, degree: int) -> Iterator[Exponent]:
    """All exponents of the given total degree, lexicographically descending."""
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    for first in range(degree, -1, -1):
        for rest in exponents_of_degree(nvars - 1, degree - first):
            yield (first, *rest)


def dim_polynomials(nvars: int, max_degree: int) -> int:
    """Number of monomials of degree <= max_degree in nvars variables."""
    return comb(max_degree + nvars, nvars)


def _add_into(out: dict[Exponent, Fraction], exponent: Exponent, value: Fraction) -> None:
    total = out.get(exponent, 0) + value
    if total:
        out[exponent] = total
    else:
        out.pop(exponent, None)


class PolyFun:
    """Sparse polynomial function y -> sum c_e y^e on an nvars-dimensional space.

    Instances are immutable; every operation returns a new polynomial. The zero polynomial
    has no stored terms and degree -1.
    """

    __slots__ = ("nvars", "terms")

    nvars: int
    terms: dict[Exponent, Fraction]

    def __init__(self, nvars: int, terms: Mapping[Exponent, RationalLike] | None = None) -> None:
        self.nvars = nvars
        self.terms = {}
        for exponent, coeff in (terms or {}).items():
            if len(exponent) != nvars or any(k < 0 for k in exponent):
                raise DimensionMismatchError(f"Exponent {exponent} does not fit {nvars} variables", nvars=nvars)
            value = as_fraction(coeff)
            if value:
                self.terms[tuple(exponent)] = value

    @classmethod
    def _wrap(cls, nvars: int, terms: dict[Exponent, Fraction]) -> PolyFun:
        poly = cls.__new__(cls)
        poly.nvars = nvars
        poly.terms = terms
        return poly

    @classmethod
    def zero(cls, nvars: int) -> PolyFun:
        return cls._wrap(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value: RationalLike) -> PolyFun:
        value = as_fraction(value)
        return cls._wrap(nvars, {(0,) * nvars: value} if value else {})

    @classmethod
    def variable(cls, nvars: int, index: int) -> PolyFun:
        return cls._wrap(nvars, {tuple(1 if k == index else 0 for k in range(nvars)): Fraction(1)})

    @classmethod
    def variables(cls, nvars: int) -> tuple[PolyFun, ...]:
        return tuple(cls.variable(nvars, i) for i in range(nvars))

    @classmethod
    def linear(cls, coeffs: Sequence[RationalLike]) -> PolyFun:
        """The linear functional y -> sum coeffs[i] * y_i."""
        nvars = len(coeffs)
        return cls(nvars, {tuple(1 if k == i else 0 for k in range(nvars)): c for i, c in enumerate(coeffs)})

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, degree: int) -> bool:
        return all(sum(e) == degree for e in self.terms)

    def is_constant(self) -> bool:
        return self.degree <= 0

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: grlex_key(item[0]), reverse=True)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PolyFun):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == PolyFun.constant(self.nvars, other).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def _coerce(self, other: PolyFun | RationalLike) -> PolyFun:
        if isinstance(other, PolyFun):
            if other.nvars != self.nvars:
                raise DimensionMismatchError(f"Polynomials in {self.nvars} and {other.nvars} variables do not mix", left=self.nvars, right=other.nvars)
            return other
        return PolyFun.constant(self.nvars, other)

    def __add__(self, other: PolyFun | RationalLike) -> PolyFun:
        if not isinstance(other, (PolyFun, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        out = dict(self.terms)
        for exponent, coeff in other.terms.items():
            _add_into(out, exponent, coeff)
        return PolyFun._wrap(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> PolyFun:
        return PolyFun._wrap(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: PolyFun | RationalLike) -> PolyFun:
        if not isinstance(other, (PolyFun, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other: RationalLike) -> PolyFun:
        return (-self) + other

    def scale(self, factor: RationalLike) -> PolyFun:
        factor = as_fraction(factor)
        if not factor:
            return PolyFun.zero(self.nvars)
        return PolyFun._wrap(self.nvars, {e: c * factor for e, c in self.terms.items()})

    def __mul__(self, other: PolyFun | RationalLike) -> PolyFun:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, PolyFun):
            return NotImplemented
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                _add_into(out, tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
        return PolyFun._wrap(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> PolyFun:
        if exponent < 0:
            raise ValueError("Polynomial powers must be nonnegative")
        result = PolyFun.constant(self.nvars, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def evaluate(self, point: Sequence[RationalLike]) -> Fraction:
        if len(point) != self.nvars:
            raise DimensionMismatchError(f"Point of length {len(point)} for a polynomial in {self.nvars} variables", nvars=self.nvars, got=len(point))
        values = [as_fraction(v) for v in point]
        total = Fraction(0)
        for exponent, coeff in self.terms.items():
            term = coeff
            for value, k in zip(values, exponent):
                if k:
                    term *= value ** k
            total += term
        return total

    def partial(self, index: int) -> PolyFun:
        out: dict[Exponent, Fraction] = {}
        for exponent, coeff in self.terms.items():
            k = exponent[index]
            if k:
                lowered = exponent[:index] + (k - 1,) + exponent[index + 1:]
                out[lowered] = coeff * k
        return PolyFun._wrap(self.nvars, out)

    def directional_derivative(self, direction: Sequence[PolyFun | RationalLike]) -> PolyFun:
        """y -> d/ds phi(y + s z)|_{s=0}; z may be concrete or a vector of polynomials in y."""
        if len(direction) != self.nvars:
            raise DimensionMismatchError(f"Direction of length {len(direction)} for {self.nvars} variables", nvars=self.nvars, got=len(direction))
        total = PolyFun.zero(self.nvars)
        for index, component in enumerate(direction):
            if not component:
                continue
            derivative = self.partial(index)
            if derivative:
                total = total + derivative * component
        return total

    def compose(self, f: PolyMap) -> PolyFun:
        """(phi o f)(y) = phi(f(y))."""
        if len(f) != self.nvars:
            raise DimensionMismatchError(f"Cannot compose a polynomial in {self.nvars} variables with a map of {len(f)} components", nvars=self.nvars, components=len(f))
        powers: list[list[PolyFun]] = [[PolyFun.constant(f.nvars, 1)] for _ in range(self.nvars)]

        def power(i: int, k: int) -> PolyFun:
            while len(powers[i]) <= k:
                powers[i].append(powers[i][-1] * f[i])
            return powers[i][k]

        out: dict[Exponent, Fraction] = {}
        for exponent, coeff in self.terms.items():
            term = PolyFun.constant(f.nvars, coeff)
            for i, k in enumerate(exponent):
                if k:
                    term = term * power(i, k)
            for e, c in term.terms.items():
                _add_into(out, e, c)
        return PolyFun._wrap(f.nvars, out)

    def homogeneous_part(self, degree: int) -> PolyFun:
        return PolyFun._wrap(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == degree})

    def homogeneous_components(self) -> list[PolyFun]:
        """Component k is the total-degree-k part; empty for the zero polynomial."""
        return [self.homogeneous_part(k) for k in range(self.degree + 1)]

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        labels = list(names) if names is not None else [f"y{i + 1}" for i in range(self.nvars)]
        pieces: list[str] = []
        for exponent, coeff in self.sorted_terms():
            factors = [labels[i] if k == 1 else f"{labels[i]}^{k}" for i, k in enumerate(exponent) if k]
            magnitude = abs(coeff)
            if not factors:
                body = format_rational(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([format_rational(magnitude), *factors])
            sign = "-" if coeff < 0 else "+"
            pieces.append(f"{sign} {body}")
        text = " ".join(pieces)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"PolyFun({self.nvars}, {self.format()})"

    def to_json(self) -> dict[str, Any]:
        return {
            "vars": self.nvars,
            "terms": [{"exp": list(e), "coeff": format_rational(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, doc: Any) -> PolyFun:
        try:
            nvars = doc["vars"]
            terms = {tuple(int(k) for k in term["exp"]): parse_rational(term["coeff"]) for term in doc["terms"]}
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, ParseError):
                raise
            raise ParseError(f"Malformed polynomial document: {e}") from None
        if not isinstance(nvars, int):
            raise ParseError("Polynomial 'vars' must be an integer")
        return cls(nvars, terms)


Coefficient = Union[PolyFun, Fraction]


class PolyMap:
    """Polynomial self-map of the coordinate space, one PolyFun per component."""

    __slots__ = ("components",)

    components: tuple[PolyFun, ...]

    def __init__(self, components: Sequence[PolyFun]) -> None:
        if not components:
            raise DimensionMismatchError("A polynomial map needs at least one component")
        nvars = components[0].nvars
        if any(c.nvars != nvars for c in components):
            raise DimensionMismatchError("All components of a polynomial map must share their variables")
        self.components = tuple(components)

    @classmethod
    def identity(cls, nvars: int) -> PolyMap:
        return cls(PolyFun.variables(nvars))

    @property
    def nvars(self) -> int:
        return self.components[0].nvars

    @property
    def degree(self) -> int:
        return max(c.degree for c in self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, index: int) -> PolyFun:
        return self.components[index]

    def __iter__(self) -> Iterator[PolyFun]:
        return iter(self.components)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMap):
            return NotImplemented
        return self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        return "PolyMap(" + ", ".join(c.format() for c in self.components) + ")"

    def evaluate(self, point: Sequence[RationalLike]) -> Vector:
        return tuple(c.evaluate(point) for c in self.components)


class MonomialBasis:
    """The monomials of P_m in nvars variables, highest degree first, giving polynomials fixed coordinates."""

    def __init__(self, nvars: int, max_degree: int) -> None:
        self.nvars = nvars
        self.max_degree = max_degree
        self.monomials: tuple[Exponent, ...] = tuple(
            e for d in range(max_degree, -1, -1) for e in exponents_of_degree(nvars, d)
        )
        self._index = {e: k for k, e in enumerate(self.monomials)}

    def __len__(self) -> int:
        return len(self.monomials)

    def index(self, exponent: Exponent) -> int:
        return self._index[exponent]

    def to_vector(self, poly: PolyFun) -> Vector:
        if poly.nvars != self.nvars:
            raise DimensionMismatchError(f"Polynomial in {poly.nvars} variables, basis has {self.nvars}", nvars=self.nvars, got=poly.nvars)
        vector = [Fraction(0)] * len(self.monomials)
        for exponent, coeff in poly.terms.items():
            slot = self._index.get(exponent)
            if slot is None:
                raise DegreeBoundError(
                    f"Polynomial of degree {poly.degree} exceeds the degree cap {self.max_degree}",
                    degree=poly.degree, cap=self.max_degree,
                )
            vector[slot] = coeff
        return tuple(vector)

    def from_vector(self, vector: Sequence[Fraction]) -> PolyFun:
        return PolyFun._wrap(self.nvars, {self.monomials[k]: v for k, v in enumerate(vector) if v})
