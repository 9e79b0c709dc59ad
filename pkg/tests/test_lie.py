from __future__ import annotations

import json
from collections.abc import Callable
from fractions import Fraction
from typing import Any

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilrep import corpus
from nilrep.errors import (
    BadParameterError,
    DimensionMismatchError,
    JacobiViolationError,
    NotNilpotentError,
    ParseError,
)
from nilrep.lie import LieAlgebra, load_algebra, subalgebra_check
from nilrep.linalg import Matrix, span_contains
from nilrep.poly import PolyFun

F = Fraction


def test_heisenberg_brackets(h3: LieAlgebra) -> None:
    e1, e2, e3 = (h3.basis_vector(i) for i in range(3))
    assert h3.bracket(e1, e2) == e3
    assert h3.bracket(e2, e1) == tuple(-v for v in e3)
    assert h3.bracket(e1, e3) == h3.zero()
    assert h3.bracket((F(1), F(2), F(0)), (F(3), F(4), F(5))) == (F(0), F(0), F(-2))


def test_bracket_accepts_polynomial_entries(h3: LieAlgebra) -> None:
    y = PolyFun.variables(3)
    x = tuple(PolyFun.constant(3, v) for v in (1, 0, 0))
    assert h3.bracket(x, y) == (PolyFun.zero(3), PolyFun.zero(3), y[1])


def test_ad_matrix(h3: LieAlgebra) -> None:
    assert h3.ad_matrix((1, 0, 0)) == Matrix.from_rows([[0, 0, 0], [0, 0, 0], [0, 1, 0]])


AD_ALGEBRAS = {
    "h3": corpus.heisenberg(3),
    "f5": corpus.filiform(5),
    "u4": corpus.strict_upper(4),
    "fn23": corpus.free_nilpotent_2_3(),
}

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=3)


def elements(dim: int) -> st.SearchStrategy[tuple[Fraction, ...]]:
    return st.tuples(*(rationals for _ in range(dim)))


@pytest.mark.parametrize("name", AD_ALGEBRAS)
def test_ad_of_zero_is_zero(name: str) -> None:
    g = AD_ALGEBRAS[name]
    assert g.ad_matrix(g.zero()) == Matrix.zeros(g.dim, g.dim)


@pytest.mark.parametrize("name", AD_ALGEBRAS)
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_ad_is_a_lie_homomorphism(name: str, data: st.DataObject) -> None:
    g = AD_ALGEBRAS[name]
    x, y = data.draw(elements(g.dim)), data.draw(elements(g.dim))
    ad_x, ad_y = g.ad_matrix(x), g.ad_matrix(y)
    assert g.ad_matrix(g.bracket(x, y)) == ad_x @ ad_y - ad_y @ ad_x


@pytest.mark.parametrize("name", AD_ALGEBRAS)
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_ad_is_linear(name: str, data: st.DataObject) -> None:
    g = AD_ALGEBRAS[name]
    x, y = data.draw(elements(g.dim)), data.draw(elements(g.dim))
    s = data.draw(rationals)
    combined = tuple(s * a + b for a, b in zip(x, y))
    assert g.ad_matrix(combined) == g.ad_matrix(x) * s + g.ad_matrix(y)


@pytest.mark.parametrize("name", AD_ALGEBRAS)
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_ad_is_nilpotent_of_order_N(name: str, data: st.DataObject) -> None:
    g = AD_ALGEBRAS[name]
    x = data.draw(elements(g.dim))
    assert g.ad_matrix(x).power(g.N).is_zero()


@pytest.mark.parametrize("name", AD_ALGEBRAS)
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_ad_lowers_the_central_series(name: str, data: st.DataObject) -> None:
    g = AD_ALGEBRAS[name]
    ad_x = g.ad_matrix(data.draw(elements(g.dim)))
    series = g.lower_central_series()
    for term, below in zip(series, series[1:]):
        for v in term:
            assert span_contains(below, ad_x.apply(v))


def test_ad_of_a_generator_is_not_nilpotent_of_lower_order(f5: LieAlgebra) -> None:
    assert not f5.ad_matrix(f5.basis_vector(0)).power(f5.N - 1).is_zero()


@pytest.mark.parametrize("fixture, dims, N", [
    ("a2", [2, 0], 1),
    ("h3", [3, 1, 0], 2),
    ("h5", [5, 1, 0], 2),
    ("f5", [5, 3, 2, 1, 0], 4),
    ("u4", [6, 3, 1, 0], 3),
    ("fn23", [5, 3, 2, 0], 3),
])
def test_lower_central_series(fixture: str, dims: list[int], N: int, request: pytest.FixtureRequest) -> None:
    g: LieAlgebra = request.getfixturevalue(fixture)
    assert g.lcs_dims() == dims
    assert g.N == N
    assert g.rep_bound == 2 ** (N - 1) * N + 1


def test_center(h3: LieAlgebra, a2: LieAlgebra, f4: LieAlgebra) -> None:
    assert h3.center() == ((F(0), F(0), F(1)),)
    assert len(a2.center()) == 2
    assert f4.center() == ((F(0), F(0), F(0), F(1)),)


def test_so3_is_not_nilpotent(so3_doc: dict[str, Any]) -> None:
    with pytest.raises(NotNilpotentError):
        LieAlgebra.from_json(so3_doc)


def test_jacobi_violation_reports_the_triple() -> None:
    with pytest.raises(JacobiViolationError) as info:
        LieAlgebra(3, None, {(0, 1): [1, 0, 0], (0, 2): [0, 1, 0]})
    details = info.value.to_dict()
    assert details["error"] == "JacobiViolation"
    assert (details["details"]["i"], details["details"]["j"], details["details"]["k"]) == (0, 1, 2)
    assert details["details"]["residual"] == ["0", "-1", "0"]


def test_constructor_validation() -> None:
    with pytest.raises(BadParameterError):
        LieAlgebra(0, None, {})
    with pytest.raises(BadParameterError):
        LieAlgebra(3, None, {(1, 0): [0, 0, 1]})
    with pytest.raises(DimensionMismatchError):
        LieAlgebra(3, None, {(0, 1): [0, 1]})
    with pytest.raises(DimensionMismatchError):
        LieAlgebra(3, ["x", "y"], {})


@pytest.mark.parametrize("doc", [
    [],
    {"name": "g"},
    {"dim": "3"},
    {"dim": 3, "brackets": [{"i": 0, "j": 1, "coeffs": ["0", "0", "1//2"]}]},
    {"dim": 3, "brackets": [{"i": 1, "j": 0, "coeffs": ["0", "0", "1"]}]},
    {"dim": 3, "brackets": [{"i": 0, "j": 1, "coeffs": ["0", "1"]}]},
    {"dim": 3, "brackets": [{"i": 0, "j": 1, "coeffs": ["0", "0", "1"]}, {"i": 0, "j": 1, "coeffs": ["0", "0", "1"]}]},
    {"dim": 3, "brackets": [{"i": 0, "coeffs": ["0", "0", "1"]}]},
    {"dim": 3, "basis": "xyz"},
])
def test_malformed_documents(doc: Any) -> None:
    with pytest.raises(ParseError):
        LieAlgebra.from_json(doc)


def test_json_document_round_trip(u4: LieAlgebra) -> None:
    doc = u4.to_json()
    again = LieAlgebra.from_json(json.loads(json.dumps(doc)))
    assert again.to_json() == doc
    assert again.basis_names[:3] == ("E12", "E23", "E34")


def test_load_algebra(write_doc: Callable[[str, Any], str], h3: LieAlgebra) -> None:
    g = load_algebra(write_doc("h.json", h3.to_json()))
    assert g.name == "h3" and g.N == 2
    with pytest.raises(ParseError):
        load_algebra(write_doc("broken.json", "{not json"))
    with pytest.raises(ParseError):
        load_algebra(write_doc("missing.json", "{}") + ".absent")


def test_generated_subalgebra(h3: LieAlgebra, f5: LieAlgebra) -> None:
    assert len(h3.generated_subalgebra([(1, 0, 0), (0, 1, 0)])) == 3
    assert len(h3.generated_subalgebra([(1, 0, 0)])) == 1
    basis = f5.generated_subalgebra([(1, 0, 0, 0, 0), (0, 1, 0, 0, 0)])
    assert len(basis) == 5
    assert len(basis) <= f5.subalgebra_dim_bound(2)
    assert f5.is_subalgebra(basis)
    assert f5.bracket_closure([(1, 0, 0, 0, 0), (0, 1, 0, 0, 0)]) == basis
    with pytest.raises(BadParameterError):
        h3.generated_subalgebra([])


@pytest.mark.parametrize("fixture", ["h3", "f5", "fn23"])
def test_subalgebra_check_passes(fixture: str, request: pytest.FixtureRequest) -> None:
    g: LieAlgebra = request.getfixturevalue(fixture)
    results = subalgebra_check(g, samples=12, seed=1)
    assert [r.name for r in results] == ["lie.subalgebra_bound", "lie.subalgebra_closed", "lie.subalgebra_closure"]
    assert all(r.passed for r in results)
    assert results[0].measured["pair_dim"] <= g.subalgebra_dim_bound(2)
