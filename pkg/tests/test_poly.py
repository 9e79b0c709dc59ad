from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilrep.errors import DegreeBoundError, DimensionMismatchError, ParseError
from nilrep.poly import MonomialBasis, PolyFun, PolyMap, dim_polynomials

y1, y2, y3 = PolyFun.variables(3)


@st.composite
def polynomials(draw: st.DrawFn, nvars: int = 3, max_degree: int = 3) -> PolyFun:
    exponents = st.tuples(*(st.integers(0, max_degree) for _ in range(nvars))).filter(lambda e: sum(e) <= max_degree)
    terms = draw(st.dictionaries(exponents, st.fractions(min_value=-3, max_value=3, max_denominator=3), max_size=4))
    return PolyFun(nvars, terms)


def test_zero_polynomial_has_degree_minus_one() -> None:
    zero = PolyFun.zero(3)
    assert zero.degree == -1
    assert not zero
    assert (y1 - y1) == zero
    assert zero.homogeneous_components() == []
    assert PolyFun.constant(3, 0) == zero


def test_arithmetic_and_evaluation() -> None:
    p = y1 * y2 - Fraction(1, 2) * y3 + 2
    assert p.degree == 2
    assert p.evaluate([2, 3, 4]) == Fraction(6)
    assert (p ** 2).evaluate([2, 3, 4]) == Fraction(36)
    assert p.constant_term() == 2
    assert p.format() == "y1*y2 - 1/2*y3 + 2"


def test_partial_and_directional_derivative() -> None:
    p = y1 ** 2 * y3 + y2
    assert p.partial(0) == 2 * y1 * y3
    assert p.partial(1) == PolyFun.constant(3, 1)
    # derivative along a polynomial vector field
    field = [PolyFun.constant(3, 1), PolyFun.zero(3), y2]
    assert p.directional_derivative(field) == 2 * y1 * y3 + y1 ** 2 * y2
    with pytest.raises(DimensionMismatchError):
        p.directional_derivative([1, 0])


def test_compose_with_polynomial_map() -> None:
    f = PolyMap([y1 - 1, y2, y3 - Fraction(1, 2) * y2])
    assert y3.compose(f) == y3 - Fraction(1, 2) * y2
    assert (y1 * y3).compose(f) == (y1 - 1) * (y3 - Fraction(1, 2) * y2)
    assert PolyFun.constant(3, 5).compose(f) == PolyFun.constant(3, 5)
    assert f.degree == 1
    assert f.evaluate([1, 2, 3]) == (Fraction(0), Fraction(2), Fraction(2))


def test_homogeneous_components() -> None:
    p = y1 ** 2 + 3 * y2 + 7
    parts = p.homogeneous_components()
    assert parts == [PolyFun.constant(3, 7), 3 * y2, y1 ** 2]
    assert all(part.is_homogeneous(k) for k, part in enumerate(parts))


@settings(max_examples=60, deadline=None)
@given(polynomials(), polynomials(), st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), min_size=3, max_size=3))
def test_evaluation_is_a_ring_homomorphism(p: PolyFun, q: PolyFun, point: list[Fraction]) -> None:
    assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)
    assert (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point)


@settings(max_examples=60, deadline=None)
@given(polynomials(), polynomials())
def test_partial_derivative_obeys_leibniz(p: PolyFun, q: PolyFun) -> None:
    for i in range(3):
        assert (p * q).partial(i) == p.partial(i) * q + p * q.partial(i)


@pytest.mark.parametrize("nvars, degree", [(1, 1), (3, 2), (5, 3), (6, 3)])
def test_monomial_basis_size(nvars: int, degree: int) -> None:
    basis = MonomialBasis(nvars, degree)
    assert len(basis) == dim_polynomials(nvars, degree) == comb(nvars + degree, nvars)
    assert sum(basis.monomials[0]) == degree
    assert basis.monomials[-1] == (0,) * nvars


def test_monomial_basis_vectors() -> None:
    basis = MonomialBasis(3, 2)
    p = y1 * y2 - y3 + 4
    assert basis.from_vector(basis.to_vector(p)) == p
    with pytest.raises(DegreeBoundError):
        basis.to_vector(y1 ** 3)


def test_json_document() -> None:
    p = Fraction(-1, 12) * y1 * y2 + 1
    doc = p.to_json()
    assert doc == {"vars": 3, "terms": [{"exp": [1, 1, 0], "coeff": "-1/12"}, {"exp": [0, 0, 0], "coeff": "1"}]}
    assert PolyFun.from_json(doc) == p
    with pytest.raises(ParseError):
        PolyFun.from_json({"vars": 3, "terms": [{"exp": [1, 0, 0], "coeff": "1//2"}]})
    with pytest.raises(ParseError):
        PolyFun.from_json({"terms": []})


def test_mixing_variable_counts_is_rejected() -> None:
    with pytest.raises(DimensionMismatchError):
        y1 + PolyFun.variable(2, 0)
    with pytest.raises(DimensionMismatchError):
        PolyFun(2, {(1, 0, 0): 1})
