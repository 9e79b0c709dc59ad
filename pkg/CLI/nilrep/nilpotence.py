"""Nilpotence of a single generator lambda_dot(x0) on polynomial functions.

Linear functionals are controlled through the family p(y) = phi(w y) of ad-words w in
X = ad x0 and Y = ad y; polynomials of higher degree through the annihilating power.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import NamedTuple, Optional

from .errors import NotLinearFunctionalError
from .lie import LieAlgebra
from .linalg import RationalLike, Vector, echelon_basis
from .models import CheckResult
from .poly import MonomialBasis, PolyFun
from .regular import annihilating_power, lie_derivative
from .representation import RepSpace
from .utils import random_element, random_functional, random_polynomial, sampler


@dataclass(frozen=True)
class MultiIndexPair:
    """Block exponents of the ad-word X^a0 Y^b0 X^a1 Y^b1 ... applied to y."""

    alpha: tuple[int, ...]
    beta: tuple[int, ...]

    @classmethod
    def from_word(cls, word: str) -> MultiIndexPair:
        alpha: list[int] = []
        beta: list[int] = []
        i = 0
        while i < len(word):
            start = i
            while i < len(word) and word[i] == "X":
                i += 1
            alpha.append(i - start)
            start = i
            while i < len(word) and word[i] == "Y":
                i += 1
            beta.append(i - start)
            if i == start and alpha[-1] == 0:
                raise ValueError(f"Ad-word '{word}' may only contain X and Y")
        return cls(tuple(alpha), tuple(beta))

    @property
    def abs_alpha(self) -> int:
        return sum(self.alpha)

    @property
    def abs_beta(self) -> int:
        return sum(self.beta)

    @property
    def weight(self) -> int:
        return self.abs_alpha + self.abs_beta

    def follows(self, other: MultiIndexPair) -> bool:
        """Strictly later in the filtration: higher weight, or equal weight with more X letters."""
        if self.weight != other.weight:
            return self.weight > other.weight
        return self.abs_alpha > other.abs_alpha


class FamilyMember(NamedTuple):
    word: str
    index: MultiIndexPair
    poly: PolyFun


@dataclass(frozen=True)
class AdWordFamily:
    x0: Vector
    functional: PolyFun
    members: tuple[FamilyMember, ...]
    space: RepSpace

    def nonzero_members(self) -> list[FamilyMember]:
        return [m for m in self.members if m.poly]


def functional_coefficients(g: LieAlgebra, phi: PolyFun) -> Vector:
    if phi.nvars != g.dim or not phi.is_homogeneous(1):
        raise NotLinearFunctionalError(
            f"Expected a linear functional on a {g.dim}-dimensional algebra, got {phi.format()}",
            degree=phi.degree, nvars=phi.nvars,
        )
    return tuple(phi.terms.get(tuple(1 if k == i else 0 for k in range(g.dim)), Fraction(0)) for i in range(g.dim))


def ad_words(N: int) -> list[str]:
    """The empty word and every word of length 1..N-1 ending in X; a final Y would act as [y, y] = 0."""
    words = [""]
    for length in range(1, N):
        words.extend("".join(prefix) + "X" for prefix in product("XY", repeat=length - 1))
    return words


def ad_word_family(g: LieAlgebra, phi: PolyFun, x0: Sequence[RationalLike]) -> AdWordFamily:
    """The polynomials p(y) = phi(w y) for every ad-word w, together with the constants."""
    coeffs = functional_coefficients(g, phi)
    x0 = g.element(x0)
    y = PolyFun.variables(g.dim)
    x0_const = tuple(PolyFun.constant(g.dim, v) for v in x0)
    applied: dict[str, tuple[PolyFun, ...]] = {"": y}

    def apply(word: str) -> tuple[PolyFun, ...]:
        if word not in applied:
            inner = apply(word[1:])
            applied[word] = g.bracket(x0_const if word[0] == "X" else y, inner)
        return applied[word]

    members = []
    for word in ad_words(g.N):
        vector = apply(word)
        poly = sum((component * c for component, c in zip(vector, coeffs) if c), PolyFun.zero(g.dim))
        members.append(FamilyMember(word, MultiIndexPair.from_word(word), poly))

    monomials = MonomialBasis(g.dim, g.N)
    rows = echelon_basis([monomials.to_vector(m.poly) for m in members] + [monomials.to_vector(PolyFun.constant(g.dim, 1))])
    return AdWordFamily(x0, phi, tuple(members), RepSpace(g, monomials, rows))


def check_ad_word_family(g: LieAlgebra, family: AdWordFamily) -> list[CheckResult]:
    """Dimension bound, per-weight counts, lambda_dot(x0)-invariance, the filtration and the annihilating power."""
    space = family.space
    x0 = family.x0
    bound = 2 ** (g.N - 1) + 1
    context = {"x0": x0, "phi": family.functional}

    dimension = CheckResult("family.dimension")
    dimension.record(space.dim <= bound, dim=space.dim, bound=bound, **context)
    dimension.measure_max("dim", space.dim)

    counts = CheckResult("family.weight_counts")
    per_weight: dict[int, int] = {}
    for member in family.nonzero_members():
        per_weight[member.index.weight] = per_weight.get(member.index.weight, 0) + 1
    for r, count in sorted(per_weight.items()):
        counts.record(count <= max(1, 2 ** (r - 1)) and r <= g.N - 1, weight=r, count=count, **context)

    invariance = CheckResult("family.invariance")
    for b in space.basis:
        image = lie_derivative(g, x0, b)
        invariance.record(space.contains(image), element=b, image=image, **context)

    filtration = CheckResult("family.filtration")
    one = PolyFun.constant(g.dim, 1)
    for member in family.members:
        later = [m.poly for m in family.members if m.index.follows(member.index)] + [one]
        rows = echelon_basis([space.monomials.to_vector(p) for p in later])
        image = lie_derivative(g, x0, member.poly)
        allowed = RepSpace(g, space.monomials, rows)
        filtration.record(allowed.contains(image), word=member.word, image=image, **context)

    annihilation = CheckResult("family.annihilation")
    for b in space.basis:
        power = annihilating_power(g, x0, b, bound)
        annihilation.record(power is not None, element=b, bound=bound, **context)
        if power is not None:
            annihilation.measure_max("power", power)
    return [dimension, counts, invariance, filtration, annihilation]


class AnnihilationResult(NamedTuple):
    degree: int
    bound: int
    power: Optional[int]

    @property
    def passed(self) -> bool:
        return self.power is not None


def check_power_annihilation(g: LieAlgebra, x0: Sequence[RationalLike], phi: PolyFun) -> AnnihilationResult:
    """lambda_dot(x0)^(2^(N-1) m + 1) phi = 0 for phi of degree m; also the smallest such power."""
    m = max(phi.degree, 0)
    bound = 2 ** (g.N - 1) * m + 1
    return AnnihilationResult(m, bound, annihilating_power(g, x0, phi, bound))


def family_checks(g: LieAlgebra, trials: int, seed: int, height: int = 3) -> list[CheckResult]:
    """Runs the ad-word family checks for sampled (phi, x0) and merges them by name."""
    rng = sampler(seed, "ad-word-family")
    merged: dict[str, CheckResult] = {}
    for _ in range(trials):
        family = ad_word_family(g, random_functional(rng, g.dim, height), random_element(rng, g.dim, height))
        for result in check_ad_word_family(g, family):
            _merge(merged, result)
    return list(merged.values())


def power_checks(g: LieAlgebra, trials: int, seed: int, height: int = 3, max_degree: int = 3) -> CheckResult:
    rng = sampler(seed, "power-annihilation")
    check = CheckResult("power.annihilation")
    for m in range(max_degree + 1):
        for _ in range(trials):
            phi = random_polynomial(rng, g.dim, m, height)
            x0 = random_element(rng, g.dim, height)
            result = check_power_annihilation(g, x0, phi)
            check.record(result.passed, x0=x0, phi=phi, degree=result.degree, bound=result.bound)
            if result.power is not None:
                check.measure_max(f"power_degree_{m}", result.power)
    return check


def _merge(merged: dict[str, CheckResult], result: CheckResult) -> None:
    target = merged.setdefault(result.name, CheckResult(result.name))
    if not result.passed and target.passed:
        target.passed = False
        target.counterexample = result.counterexample
    target.trials += result.trials
    for key, value in result.measured.items():
        target.measure_max(key, value)
