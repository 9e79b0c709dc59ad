from __future__ import annotations

import json
from collections.abc import Callable
from fractions import Fraction
from typing import Any

import pytest

from nilrep import api, corpus
from nilrep.config import Settings
from nilrep.errors import BadParameterError
from nilrep.lie import LieAlgebra
from nilrep.models import CheckResult, ReportRow

QUICK = Settings(samples=6, seed=0, height=2)


def test_analyze_heisenberg(h3: LieAlgebra) -> None:
    assert api.analyze(h3) == {
        "algebra": "h3",
        "dim": 3,
        "lcs_dims": [3, 1, 0],
        "N": 2,
        "center": [["0", "0", "1"]],
        "bound": 5,
        "dim_P_N": 10,
    }


def test_analyze_filiform(f5: LieAlgebra) -> None:
    doc = api.analyze(f5)
    assert doc["lcs_dims"] == [5, 3, 2, 1, 0]
    assert (doc["N"], doc["bound"]) == (4, 33)
    assert doc["center"] == [["0", "0", "0", "0", "1"]]


def test_validate_and_bch_documents(h3: LieAlgebra) -> None:
    assert api.validate(h3) == {"valid": True, "algebra": "h3", "dim": 3, "N": 2}
    doc = api.bch_document(h3, [1, 0, 0], [0, 1, 0])
    assert doc["product"] == ["1", "1", "1/2"]
    assert doc["x"] == ["1", "0", "0"]


def test_corpus_document_round_trips() -> None:
    doc = api.corpus_document("strict_upper", 4)
    assert doc["dim"] == 6
    assert LieAlgebra.from_json(json.loads(api.dump_json(doc))).N == 3


@pytest.mark.parametrize("fixture, dim_FG, bound", [("a2", 3, 2), ("h3", 4, 5)])
def test_represent(fixture: str, dim_FG: int, bound: int, request: pytest.FixtureRequest) -> None:
    g: LieAlgebra = request.getfixturevalue(fixture)
    doc = api.represent(g).to_json()
    assert (doc["dim_FG"], doc["bound"]) == (dim_FG, bound)


def test_load_respects_dimension_cap(h3_path: str) -> None:
    assert api.load(h3_path, Settings()).name == "h3"
    with pytest.raises(BadParameterError):
        api.load(h3_path, Settings(max_dim=2))


def test_dimension_cap_is_checked_before_the_brackets(write_doc: Callable[[str, Any], str]) -> None:
    path = write_doc("huge.json", {"dim": 100_000, "brackets": "never read"})
    with pytest.raises(BadParameterError) as excinfo:
        api.load(path, Settings())
    assert excinfo.value.details == {"dim": 100_000, "max_dim": 8}


@pytest.mark.parametrize("fixture", ["a1", "h3", "f4"])
def test_verify_passes(fixture: str, request: pytest.FixtureRequest) -> None:
    g: LieAlgebra = request.getfixturevalue(fixture)
    report = api.verify(g, QUICK)
    assert [c.to_json() for c in report.failed_checks()] == []
    assert report.passed
    assert 1 <= report.max_nilpotence_index <= report.bound
    assert 1 <= report.max_unipotence_index <= report.bound
    names = {c.name for c in report.checks}
    assert {"bch.associativity", "rep.faithfulness", "rep.negative_control", "family.filtration", "power.annihilation", "vphi.degree"} <= names


@pytest.mark.parametrize("entry", corpus.STANDARD_CORPUS, ids=str)
def test_verify_passes_on_the_standard_corpus(entry: corpus.CorpusSpec) -> None:
    g = corpus.make(entry)
    report = api.verify(g, Settings())
    assert [c.to_json() for c in report.failed_checks()] == []
    assert report.bound == g.rep_bound
    assert 1 <= report.max_nilpotence_index <= report.bound
    assert 1 <= report.max_unipotence_index <= report.bound
    checks = {c.name: c for c in report.checks}
    assert checks["rep.faithfulness"].measured["rank"] == g.dim
    assert checks["rep.negative_control"].passed
    assert checks["bch.associativity"].trials >= 200
    assert checks["rep.lie_homomorphism"].trials >= 100
    assert checks["vphi.invariance"].passed


def test_verify_abelian_reaches_bound(a1: LieAlgebra) -> None:
    report = api.verify(a1, QUICK)
    assert (report.dim_FG, report.bound, report.max_nilpotence_index) == (2, 2, 2)


def test_verify_is_deterministic() -> None:
    g = corpus.free_nilpotent_2_3()
    first = api.dump_json(api.verify(g, QUICK).to_json())
    second = api.dump_json(api.verify(g, QUICK).to_json())
    assert first == second
    assert api.dump_json(api.verify(g, Settings(samples=6, seed=1, height=2)).to_json()) != first


def test_report_keeps_input_order(h3_path: str, a1_path: str) -> None:
    reports = api.report([h3_path, a1_path], QUICK, quiet=True)
    assert [r.algebra for r in reports] == ["h3", "a1"]
    doc = api.report_document(reports)
    assert [row["name"] for row in doc["rows"]] == ["h3", "a1"]
    assert all(row["passed"] for row in doc["rows"])


def test_report_with_workers_matches_serial(h3_path: str, a1_path: str) -> None:
    serial = api.report([h3_path, a1_path], QUICK, quiet=True)
    parallel = api.report([h3_path, a1_path], Settings(samples=6, seed=0, height=2, jobs=2), quiet=True)
    assert [r.to_json() for r in parallel] == [r.to_json() for r in serial]


def test_render_table() -> None:
    rows = [ReportRow("h3", 3, 2, 4, 2, 5, True), ReportRow("fn23", 5, 3, 9, 4, 13, False)]
    lines = api.render_table(rows).splitlines()
    assert lines[0].split() == ["algebra", "dim", "g", "N", "dim", "F_G", "measured", "bound", "result"]
    assert set(lines[1].replace(" ", "")) == {"-"}
    assert lines[2].split() == ["h3", "3", "2", "4", "2", "5", "pass"]
    assert lines[3].split() == ["fn23", "5", "3", "9", "4", "13", "fail"]


def test_check_result_keeps_first_counterexample() -> None:
    check = CheckResult("demo")
    assert check.record(True, x=Fraction(1, 2))
    assert not check.record(False, x=Fraction(-1, 3))
    check.record(False, x=Fraction(5))
    assert check.to_json() == {"name": "demo", "passed": False, "trials": 3, "counterexample": {"x": "-1/3"}}
