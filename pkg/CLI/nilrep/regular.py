"""The regular representation (lambda(x) phi)(y) = phi((-x) * y) on polynomial functions and its generator."""
from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from math import factorial
from typing import Optional

from .bch import bch_derivative_coeffs, bch_product, left_translation, velocity_field
from .errors import NotNilpotentError
from .lie import LieAlgebra
from .linalg import RationalLike
from .models import CheckResult
from .poly import PolyFun
from .utils import random_element, random_polynomial, sampler


def translate_poly(g: LieAlgebra, x: Sequence[RationalLike], phi: PolyFun) -> PolyFun:
    return phi.compose(left_translation(g, x))


def lie_derivative(g: LieAlgebra, x: Sequence[RationalLike], phi: PolyFun) -> PolyFun:
    """t-linear coefficient of phi(L_{tx}(y)): the chain rule applied to the velocity of L_{tx}."""
    return phi.directional_derivative(velocity_field(g, x).components)


def lie_derivative_from_coeffs(g: LieAlgebra, x: Sequence[RationalLike], phi: PolyFun) -> PolyFun:
    """sum_j c_j phi'_y((ad y)^j x), with y symbolic."""
    y = PolyFun.variables(g.dim)
    term = tuple(PolyFun.constant(g.dim, v) for v in g.element(x))
    total = PolyFun.zero(g.dim)
    for c in bch_derivative_coeffs(g.N):
        if not any(term):
            break
        if c:
            total = total + phi.directional_derivative(term).scale(c)
        term = g.bracket(y, term)
    return total


def iterate_lie_derivative(g: LieAlgebra, x: Sequence[RationalLike], phi: PolyFun, times: int) -> PolyFun:
    for _ in range(times):
        if not phi:
            break
        phi = lie_derivative(g, x, phi)
    return phi


def annihilating_power(g: LieAlgebra, x: Sequence[RationalLike], phi: PolyFun, limit: int) -> Optional[int]:
    """Smallest k <= limit with lambda_dot(x)^k phi = 0, or None."""
    for k in range(limit + 1):
        if not phi:
            return k
        if k < limit:
            phi = lie_derivative(g, x, phi)
    return None


def exp_lie_derivative(g: LieAlgebra, x: Sequence[RationalLike], phi: PolyFun) -> PolyFun:
    """sum_k lambda_dot(x)^k phi / k!, which must equal lambda(x) phi."""
    limit = 2 ** (g.N - 1) * max(phi.degree, 0) + 1
    total = PolyFun.zero(g.dim)
    term = phi
    for k in range(limit + 1):
        if not term:
            return total
        total = total + term.scale(Fraction(1, factorial(k)))
        term = lie_derivative(g, x, term)
    raise NotNilpotentError(
        f"lambda_dot(x)^{limit} does not annihilate a polynomial of degree {phi.degree}",
        degree=phi.degree, limit=limit,
    )


def derivative_checks(g: LieAlgebra, samples: int, seed: int, height: int = 3) -> list[CheckResult]:
    """Identities of the regular representation on sampled polynomials.

    Composition with L_x is the expensive step, so the group-action and Taylor checks
    use a tenth of the samples and polynomials of degree <= 2.
    """
    rng = sampler(seed, "regular")
    formula = CheckResult("regular.derivative_formula")
    leibniz = CheckResult("regular.leibniz")
    linearity = CheckResult("regular.linearity")
    degree = CheckResult("regular.derivative_degree")
    for trial in range(max(1, samples // 2)):
        x, x2 = random_element(rng, g.dim, height), random_element(rng, g.dim, height)
        phi = random_polynomial(rng, g.dim, trial % 4, height)
        psi = random_polynomial(rng, g.dim, rng.randint(0, 2), height)
        d_phi = lie_derivative(g, x, phi)

        expected = lie_derivative_from_coeffs(g, x, phi)
        formula.record(d_phi == expected, x=x, phi=phi, observed=d_phi, expected=expected)

        product = lie_derivative(g, x, phi * psi)
        leibniz.record(product == d_phi * psi + phi * lie_derivative(g, x, psi), x=x, phi=phi, psi=psi)

        s = rng.choice((-2, -1, 1, 2))
        combined = tuple(s * a + b for a, b in zip(x, x2))
        linear = lie_derivative(g, combined, phi) == d_phi.scale(s) + lie_derivative(g, x2, phi)
        linearity.record(linear, x=x, x2=x2, scale=s, phi=phi)

        if phi:
            degree.record(d_phi.degree <= phi.degree - 1 + (g.N - 1), x=x, phi=phi, observed=d_phi.degree)
        else:
            degree.record(not d_phi, x=x, phi=phi)

    action = CheckResult("regular.group_action")
    taylor = CheckResult("regular.exponential")
    translate_degree = CheckResult("regular.translate_degree")
    for trial in range(max(1, samples // 10)):
        x, x2 = random_element(rng, g.dim, height), random_element(rng, g.dim, height)
        phi = random_polynomial(rng, g.dim, trial % 3, height)
        moved = translate_poly(g, x2, phi)
        twice = translate_poly(g, x, moved)
        once = translate_poly(g, bch_product(g, x, x2), phi)
        action.record(once == twice, x=x, x2=x2, phi=phi)
        exponential = exp_lie_derivative(g, x2, phi)
        taylor.record(exponential == moved, x=x2, phi=phi, observed=exponential, expected=moved)
        translate_degree.record(moved.degree <= max(phi.degree, 0) * g.N, x=x2, phi=phi, observed=moved.degree)
    return [formula, leibniz, linearity, degree, action, taylor, translate_degree]
