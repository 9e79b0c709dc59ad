from __future__ import annotations

from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial

from .errors import BadParameterError
from .lie import LieAlgebra, Scalar, zero_like
from .linalg import RationalLike, Vector
from .models import CheckResult
from .poly import PolyFun, PolyMap
from .utils import random_element, sampler

Word = tuple[int, ...]

# letters of a bracket word: A stands for the left factor, B for the right one
A = 0
B = 1


@dataclass(frozen=True)
class BchSeries:
    """Dynkin form of log(e^a e^b) truncated at `degree`.

    terms[d - 1] holds the degree-d part as (word, coefficient) pairs; the word
    (w1, ..., wk) stands for the right-nested bracket [w1, [w2, [..., wk]]].
    """

    degree: int
    terms: tuple[tuple[tuple[Word, Fraction], ...], ...]

    def all_terms(self) -> Iterator[tuple[Word, Fraction]]:
        for part in self.terms:
            yield from part

    def coefficient(self, word: Word) -> Fraction:
        if not 1 <= len(word) <= self.degree:
            return Fraction(0)
        return dict(self.terms[len(word) - 1]).get(word, Fraction(0))

    def single_a_terms(self) -> list[tuple[Word, Fraction]]:
        """Terms linear in a; together they give the t-linear part of (t a) * b."""
        return [(word, c) for word, c in self.all_terms() if word.count(A) == 1]

    def evaluate(self, bracket: Callable[[Sequence[Scalar], Sequence[Scalar]], tuple[Scalar, ...]],
                 a: Sequence[Scalar], b: Sequence[Scalar], words: Sequence[tuple[Word, Fraction]] | None = None) -> tuple[Scalar, ...]:
        """Sums coefficient * bracket word over the series with a, b substituted.

        Words sharing a suffix share its bracket evaluation.
        """
        letters = (tuple(a), tuple(b))
        cache: dict[Word, tuple[Scalar, ...]] = {}

        def value(word: Word) -> tuple[Scalar, ...]:
            if word not in cache:
                if len(word) == 1:
                    cache[word] = letters[word[0]]
                else:
                    cache[word] = bracket(letters[word[0]], value(word[1:]))
            return cache[word]

        total = [zero_like(v) for v in letters[0]]
        for word, coeff in (self.all_terms() if words is None else words):
            vector = value(word)
            if not any(vector):
                continue
            total = [t + v * coeff if v else t for t, v in zip(total, vector)]
        return tuple(total)


def _compositions(total: int) -> Iterator[tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _compositions(total - first):
            yield (first, *rest)


def _degree_part(degree: int) -> tuple[tuple[Word, Fraction], ...]:
    collected: dict[Word, Fraction] = {}
    for parts in _compositions(degree):
        n = len(parts)
        outer = Fraction((-1) ** (n - 1), n * degree)
        for splits in product(*(range(size + 1) for size in parts)):
            word: list[int] = []
            denominator = 1
            for size, r in zip(parts, splits):
                word.extend([A] * r + [B] * (size - r))
                denominator *= factorial(r) * factorial(size - r)
            if len(word) >= 2 and word[-1] == word[-2]:
                continue
            key = tuple(word)
            collected[key] = collected.get(key, Fraction(0)) + outer / denominator
    return tuple((word, c) for word, c in sorted(collected.items()) if c)


@lru_cache(maxsize=None)
def dynkin_series(degree: int) -> BchSeries:
    if degree < 1:
        raise BadParameterError(f"Series degree must be >= 1, got {degree}", degree=degree)
    return BchSeries(degree, tuple(_degree_part(d) for d in range(1, degree + 1)))


def bch_product(g: LieAlgebra, x: Sequence[RationalLike], y: Sequence[RationalLike]) -> Vector:
    """x * y in the group (g, *), truncated at the nilpotency degree of g."""
    return dynkin_series(g.N).evaluate(g.bracket, g.element(x), g.element(y))


def group_inverse(x: Vector) -> Vector:
    return tuple(-v for v in x)


def _constants(g: LieAlgebra, x: Vector) -> tuple[PolyFun, ...]:
    return tuple(PolyFun.constant(g.dim, v) for v in x)


@lru_cache(maxsize=512)
def _left_translation(g: LieAlgebra, x: Vector) -> PolyMap:
    a = _constants(g, group_inverse(x))
    return PolyMap(dynkin_series(g.N).evaluate(g.bracket, a, PolyFun.variables(g.dim)))


def left_translation(g: LieAlgebra, x: Sequence[RationalLike]) -> PolyMap:
    """L_x(y) = (-x) * y with y symbolic; every component has degree <= N."""
    return _left_translation(g, g.element(x))


@lru_cache(maxsize=512)
def _velocity_field(g: LieAlgebra, x: Vector) -> PolyMap:
    series = dynkin_series(g.N)
    a = _constants(g, group_inverse(x))
    return PolyMap(series.evaluate(g.bracket, a, PolyFun.variables(g.dim), words=series.single_a_terms()))


def velocity_field(g: LieAlgebra, x: Sequence[RationalLike]) -> PolyMap:
    """y -> d/dt ((-t x) * y) at t = 0, the t-linear coefficient of L_{tx}(y)."""
    return _velocity_field(g, g.element(x))


def bch_derivative_coeffs(upto: int) -> list[Fraction]:
    """c_0..c_upto with d/dt ((-t x) * y)|_{t=0} = sum_j c_j (ad y)^j x in any nilpotent algebra.

    Read off the linear-in-a words of the free series: (ad b)^j a contributes -c and
    (ad b)^(j-1) [a, b] contributes +c to the coefficient of (ad y)^j x.
    """
    if upto < 0:
        raise BadParameterError(f"Coefficient count must be >= 0, got {upto}", upto=upto)
    series = dynkin_series(upto + 1)
    coeffs = [-series.coefficient((A,))]
    for j in range(1, upto + 1):
        coeffs.append(-series.coefficient((B,) * j + (A,)) + series.coefficient((B,) * (j - 1) + (A, B)))
    return coeffs


def bernoulli_numbers(upto: int) -> list[Fraction]:
    """B_0..B_upto from sum_{k<=m} C(m+1, k) B_k = 0, so B_1 = -1/2."""
    numbers: list[Fraction] = []
    for m in range(upto + 1):
        if m == 0:
            numbers.append(Fraction(1))
            continue
        numbers.append(-sum((comb(m + 1, k) * numbers[k] for k in range(m)), Fraction(0)) / (m + 1))
    return numbers


def coefficient_check(upto: int = 6) -> CheckResult:
    check = CheckResult("bch.derivative_coefficients")
    bernoulli = bernoulli_numbers(upto)
    for j, c in enumerate(bch_derivative_coeffs(upto)):
        expected = -bernoulli[j] / factorial(j)
        check.record(c == expected, j=j, observed=c, expected=expected)
    return check


def group_axiom_check(g: LieAlgebra, samples: int, seed: int, height: int = 3) -> list[CheckResult]:
    if samples < 1:
        raise BadParameterError(f"Sample count must be >= 1, got {samples}", samples=samples)
    rng = sampler(seed, "group-axioms")
    associativity = CheckResult("bch.associativity")
    identity = CheckResult("bch.identity")
    inverse = CheckResult("bch.inverse")
    zero = g.zero()
    for _ in range(samples):
        x, y, z = (random_element(rng, g.dim, height) for _ in range(3))
        left = bch_product(g, bch_product(g, x, y), z)
        right = bch_product(g, x, bch_product(g, y, z))
        associativity.record(left == right, x=x, y=y, z=z, observed=left, expected=right)
        identity.record(bch_product(g, x, zero) == x and bch_product(g, zero, x) == x, x=x)
        product_with_inverse = bch_product(g, x, group_inverse(x))
        inverse.record(not any(product_with_inverse), x=x, observed=product_with_inverse)
    return [associativity, identity, inverse]


def translation_check(g: LieAlgebra, samples: int, seed: int, height: int = 3) -> list[CheckResult]:
    """L_x agrees with (-x) * y pointwise, has degree <= N, and its velocity matches sum_j c_j (ad y)^j x."""
    rng = sampler(seed, "translation")
    consistency = CheckResult("bch.left_translation")
    degree = CheckResult("bch.left_translation_degree")
    first_order = CheckResult("bch.first_order")
    coeffs = bch_derivative_coeffs(g.N)
    for _ in range(samples):
        x, y = random_element(rng, g.dim, height), random_element(rng, g.dim, height)
        translation = left_translation(g, x)
        observed = translation.evaluate(y)
        expected = bch_product(g, group_inverse(x), y)
        consistency.record(observed == expected, x=x, y=y, observed=observed, expected=expected)
        degree.record(translation.degree <= g.N, x=x, degree=translation.degree, N=g.N)

        velocity = velocity_field(g, x).evaluate(y)
        series_value = list(g.zero())
        term = x
        for c in coeffs:
            series_value = [s + c * t for s, t in zip(series_value, term)]
            term = g.bracket(y, term)
        first_order.record(velocity == tuple(series_value), x=x, y=y, observed=velocity, expected=series_value)
    return [consistency, degree, first_order]
