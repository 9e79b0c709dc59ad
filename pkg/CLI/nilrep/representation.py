from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any, NamedTuple

from .bch import bch_product, left_translation
from .errors import BadParameterError, DegreeBoundError, NotInvariantError, NotNilpotentError
from .lie import LieAlgebra
from .linalg import (
    Matrix,
    RationalLike,
    Vector,
    echelon_coordinates,
    exp_nilpotent,
    extend_basis,
    kernel_basis,
    leading_index,
    nilpotency_index,
    rank,
    span_contains,
)
from .models import CheckResult
from .poly import MonomialBasis, PolyFun
from .regular import lie_derivative, translate_poly
from .utils import random_element, random_polynomial, random_rational, sampler


class RepSpace:
    """Finite-dimensional space of polynomial functions on g, held as a reduced echelon basis over P_m.

    Vectors are taken over `MonomialBasis(dim g, degree_cap)`, so the basis is canonical for
    the subspace; coordinates of a member are its entries at the pivot columns.
    """

    def __init__(self, algebra: LieAlgebra, monomials: MonomialBasis, rows: Sequence[Vector]) -> None:
        self.algebra = algebra
        self.monomials = monomials
        self.rows = tuple(rows)
        self.basis = tuple(monomials.from_vector(row) for row in self.rows)
        self.pivots = tuple(leading_index(row) or 0 for row in self.rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def degree_cap(self) -> int:
        return self.monomials.max_degree

    @property
    def max_degree(self) -> int:
        """Highest degree actually attained by the space."""
        return max((p.degree for p in self.basis), default=-1)

    def vector(self, phi: PolyFun) -> Vector:
        return self.monomials.to_vector(phi)

    def contains(self, phi: PolyFun) -> bool:
        if phi.degree > self.degree_cap:
            return False
        return span_contains(self.rows, self.vector(phi))

    def coordinates(self, phi: PolyFun) -> Vector:
        coords = echelon_coordinates(self.rows, self.vector(phi)) if phi.degree <= self.degree_cap else None
        if coords is None:
            raise NotInvariantError(f"{phi.format(self.algebra.basis_names)} lies outside the space", polynomial=phi.to_json())
        return coords

    def to_json(self) -> list[dict[str, Any]]:
        return [p.to_json() for p in self.basis]


def closure_space(g: LieAlgebra, seeds: Iterable[PolyFun], degree_cap: int, adjoin_one: bool = False) -> RepSpace:
    """Smallest lambda_dot(g)-invariant space containing the seeds.

    Breadth-first: each wave applies lambda_dot(e_i) for every basis vector e_i to the polynomials
    that grew the span in the previous wave. A derivative above the degree cap raises DegreeBoundError.
    """
    monomials = MonomialBasis(g.dim, degree_cap)
    rows: tuple[Vector, ...] = ()

    def absorb(candidates: Iterable[PolyFun]) -> list[PolyFun]:
        nonlocal rows
        fresh = []
        for p in candidates:
            rows, added = extend_basis(rows, [monomials.to_vector(p)])
            if added:
                fresh.append(p)
        return fresh

    frontier = absorb(seeds)
    while frontier:
        frontier = absorb(
            lie_derivative(g, g.basis_vector(i), p) for p in frontier for i in range(g.dim)
        )
    if adjoin_one:
        absorb([PolyFun.constant(g.dim, 1)])
    return RepSpace(g, monomials, rows)


def coordinate_functionals(g: LieAlgebra) -> list[PolyFun]:
    return [PolyFun.variable(g.dim, i) for i in range(g.dim)]


def build_FG(g: LieAlgebra) -> RepSpace:
    """F_G: the lambda_dot-closure of the coordinate functionals, with the constants adjoined."""
    return closure_space(g, coordinate_functionals(g), g.N, adjoin_one=True)


def vphi_space(g: LieAlgebra, phis: Sequence[PolyFun], max_deg: int) -> RepSpace:
    """V_Phi: the lambda_dot-closure of span Phi inside P_{mN}."""
    for phi in phis:
        if phi.degree > max_deg:
            raise BadParameterError(f"Polynomial of degree {phi.degree} exceeds the declared maximum {max_deg}", degree=phi.degree, max_deg=max_deg)
    try:
        return closure_space(g, phis, max_deg * g.N)
    except DegreeBoundError as e:
        raise DegreeBoundError(f"Closure left P_{max_deg * g.N}: {e}", **e.details) from None


class FaithfulnessResult(NamedTuple):
    is_faithful: bool
    kernel_dim: int
    rank: int


@dataclass(frozen=True)
class Representation:
    space: RepSpace
    generator_matrices: tuple[Matrix, ...]

    @classmethod
    def from_space(cls, space: RepSpace) -> Representation:
        """Column j of the i-th matrix holds the coordinates of lambda_dot(e_i) b_j."""
        g = space.algebra
        matrices = []
        for i in range(g.dim):
            columns = [space.coordinates(lie_derivative(g, g.basis_vector(i), b)) for b in space.basis]
            matrices.append(Matrix.from_columns(columns, rows=space.dim))
        return cls(space, tuple(matrices))

    @property
    def algebra(self) -> LieAlgebra:
        return self.space.algebra

    @property
    def dim_rep(self) -> int:
        return self.space.dim

    @property
    def bound(self) -> int:
        return self.algebra.rep_bound

    def to_json(self) -> dict[str, Any]:
        g = self.algebra
        return {
            "algebra": g.name,
            "dim_g": g.dim,
            "N": g.N,
            "bound": self.bound,
            "dim_FG": self.dim_rep,
            "basis": self.space.to_json(),
            "generators": [{"x": i, "matrix": m.to_json()} for i, m in enumerate(self.generator_matrices)],
        }


def lambda_dot_matrix(rep: Representation, x: Sequence[RationalLike]) -> Matrix:
    x = rep.algebra.element(x)
    total = Matrix.zeros(rep.dim_rep, rep.dim_rep)
    for coeff, m in zip(x, rep.generator_matrices):
        if coeff:
            total = total + m * coeff
    return total


def lambda_matrix(rep: Representation, x: Sequence[RationalLike]) -> Matrix:
    return exp_nilpotent(lambda_dot_matrix(rep, x), rep.bound)


def faithfulness_check(rep: Representation) -> FaithfulnessResult:
    """Rank of x -> lambda_dot_G(x), assembled as a (dim F_G)^2 x dim g matrix."""
    d = rep.dim_rep
    assembled = Matrix.from_columns([m.entries for m in rep.generator_matrices], rows=d * d)
    r = rank(assembled)
    n = rep.algebra.dim
    return FaithfulnessResult(r == n, n - r, r)


def nilpotence_index(rep: Representation, x: Sequence[RationalLike]) -> int:
    index = nilpotency_index(lambda_dot_matrix(rep, x), rep.bound)
    if index is None:
        raise NotNilpotentError(f"lambda_dot(x)^{rep.bound} is not zero", bound=rep.bound)
    return index


def unipotence_index(rep: Representation, x: Sequence[RationalLike]) -> int:
    index = nilpotency_index(lambda_matrix(rep, x) - Matrix.identity(rep.dim_rep), rep.bound)
    if index is None:
        raise NotNilpotentError(f"(lambda(x) - 1)^{rep.bound} is not zero", bound=rep.bound)
    return index


def homomorphism_check(rep: Representation, samples: int, seed: int, height: int = 3) -> list[CheckResult]:
    g = rep.algebra
    rng = sampler(seed, "homomorphism")
    lie_hom = CheckResult("rep.lie_homomorphism")
    group_hom = CheckResult("rep.group_homomorphism")
    for _ in range(samples):
        x, y = random_element(rng, g.dim, height), random_element(rng, g.dim, height)
        mx, my = lambda_dot_matrix(rep, x), lambda_dot_matrix(rep, y)
        observed = lambda_dot_matrix(rep, g.bracket(x, y))
        expected = mx @ my - my @ mx
        lie_hom.record(observed == expected, x=x, y=y, observed=observed, expected=expected)

        product = lambda_matrix(rep, bch_product(g, x, y))
        composed = lambda_matrix(rep, x) @ lambda_matrix(rep, y)
        group_hom.record(product == composed, x=x, y=y, observed=product, expected=composed)
    return [lie_hom, group_hom]


def bound_check(rep: Representation, samples: int, seed: int, height: int = 3) -> CheckResult:
    """lambda_dot_G(x) and lambda_G(x) - 1 vanish at the power 2^(N-1) N + 1; records the largest measured indices."""
    g = rep.algebra
    rng = sampler(seed, "bound")
    check = CheckResult("rep.nilpotence_bound")
    points = [g.basis_vector(i) for i in range(g.dim)] + [random_element(rng, g.dim, height) for _ in range(samples)]
    for x in points:
        try:
            nil = nilpotence_index(rep, x)
            uni = unipotence_index(rep, x)
        except NotNilpotentError as e:
            check.record(False, x=x, message=str(e))
            continue
        check.record(nil <= rep.bound and uni <= rep.bound, x=x, nilpotence=nil, unipotence=uni, bound=rep.bound)
        check.measure_max("nilpotence_index", nil)
        check.measure_max("unipotence_index", uni)
    return check


def invariance_check(rep: Representation) -> CheckResult:
    """lambda_dot(e_i) b lies in the space for every generator and basis element, and g* and 1 are contained."""
    g = rep.algebra
    space = rep.space
    check = CheckResult("rep.invariance")
    for i in range(g.dim):
        for b in space.basis:
            image = lie_derivative(g, g.basis_vector(i), b)
            check.record(space.contains(image), generator=i, element=b, image=image)
    for xi in [*coordinate_functionals(g), PolyFun.constant(g.dim, 1)]:
        check.record(space.contains(xi), element=xi)
    return check


def orbit_check(rep: Representation, samples: int, seed: int, height: int = 3) -> list[CheckResult]:
    """Compares the group action on F_G with the regular representation on polynomials."""
    g = rep.algebra
    space = rep.space
    rng = sampler(seed, "orbit")
    functionals = coordinate_functionals(g)
    membership = CheckResult("rep.orbit_membership")
    action = CheckResult("rep.matrix_action")
    at_zero = CheckResult("rep.evaluation_at_zero")
    origin = g.zero()
    for _ in range(samples):
        x = random_element(rng, g.dim, height)
        lam = lambda_matrix(rep, x)
        for xi in functionals:
            moved = translate_poly(g, x, xi)
            if not membership.record(space.contains(moved), x=x, xi=xi, moved=moved):
                continue
            observed = lam.apply(space.coordinates(xi))
            expected = space.coordinates(moved)
            action.record(observed == expected, x=x, xi=xi, observed=observed, expected=expected)
            value = moved.evaluate(origin)
            at_zero.record(value == -xi.evaluate(x), x=x, xi=xi, observed=value)

    central = CheckResult("rep.central_translation")
    one = PolyFun.constant(g.dim, 1)
    for v in g.center():
        s = random_rational(rng, height, nonzero=True)
        v = tuple(s * c for c in v)
        for xi in functionals:
            moved = translate_poly(g, v, xi)
            expected = xi - one * xi.evaluate(v)
            central.record(moved == expected, v=v, xi=xi, observed=moved, expected=expected)
    return [membership, action, at_zero, central]


def negative_control_space(g: LieAlgebra) -> RepSpace:
    """Closure of the functionals vanishing on the center, plus 1.

    Central translations fix every such function, so the representation on this space has
    the center in its kernel.
    """
    center = g.center()
    annihilators = [PolyFun.linear(v) for v in kernel_basis(Matrix.from_rows(center, cols=g.dim))]
    return closure_space(g, annihilators, g.N, adjoin_one=True)


def vphi_checks(g: LieAlgebra, samples: int, seed: int, height: int = 3, degrees: Sequence[int] = (1, 2)) -> list[CheckResult]:
    """V_Phi stays inside P_{mN}, contains lambda(x) Phi and is lambda(x)-invariant for sampled x."""
    rng = sampler(seed, "vphi")
    degree = CheckResult("vphi.degree")
    membership = CheckResult("vphi.orbit_membership")
    invariance = CheckResult("vphi.invariance")
    for m in degrees:
        phis = [random_polynomial(rng, g.dim, m, height)]
        try:
            space = vphi_space(g, phis, m)
        except DegreeBoundError as e:
            degree.record(False, phi=phis[0], message=str(e))
            continue
        degree.record(space.max_degree <= m * g.N, phi=phis[0], observed=space.max_degree, bound=m * g.N)
        degree.measure_max(f"max_degree_m{m}", space.max_degree)
        degree.measure_max(f"dim_m{m}", space.dim)
        for _ in range(samples):
            x = random_element(rng, g.dim, height)
            shift = left_translation(g, x)
            for phi in phis:
                moved = phi.compose(shift)
                membership.record(space.contains(moved), x=x, phi=phi, moved=moved)
            for b in space.basis:
                moved = b.compose(shift)
                invariance.record(space.contains(moved), x=x, basis_element=b, moved=moved)
    return [degree, membership, invariance]
