from __future__ import annotations

import json
import os
from collections.abc import Callable
from pathlib import Path
from typing import Any

import pytest

from nilrep import api
from nilrep_cli import main

FAST = ["--samples", "4", "--height", "2", "--allow_system_sleep", "true"]


def run(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate(capsys: pytest.CaptureFixture[str], h3_path: str) -> None:
    code, out, _ = run(capsys, "validate", h3_path)
    assert code == 0
    assert json.loads(out) == {"valid": True, "algebra": "h3", "dim": 3, "N": 2}


def test_validate_reports_non_nilpotent_algebra(capsys: pytest.CaptureFixture[str], write_doc: Callable[[str, Any], str], so3_doc: dict[str, Any]) -> None:
    code, out, _ = run(capsys, "validate", write_doc("so3.json", so3_doc))
    assert code == 1
    doc = json.loads(out)
    assert (doc["valid"], doc["error"]) == (False, "NotNilpotent")


def test_validate_reports_parse_error(capsys: pytest.CaptureFixture[str], write_doc: Callable[[str, Any], str]) -> None:
    path = write_doc("bad.json", {"dim": 3, "brackets": [{"i": 0, "j": 1, "coeffs": ["0", "0", "1//2"]}]})
    code, out, _ = run(capsys, "validate", path)
    assert code == 1
    assert json.loads(out)["error"] == "ParseError"


def test_analyze(capsys: pytest.CaptureFixture[str], h3_path: str) -> None:
    code, out, _ = run(capsys, "analyze", h3_path)
    assert code == 0
    assert json.loads(out)["lcs_dims"] == [3, 1, 0]


def test_bch(capsys: pytest.CaptureFixture[str], h3_path: str) -> None:
    code, out, _ = run(capsys, "bch", h3_path, "--x", "1,0,0", "--y", "0,1,0")
    assert code == 0
    assert json.loads(out)["product"] == ["1", "1", "1/2"]


def test_bch_argument_errors(capsys: pytest.CaptureFixture[str], h3_path: str) -> None:
    with pytest.raises(SystemExit) as info:
        main(["bch", h3_path, "--x", "1,a,0", "--y", "0,1,0"])
    assert info.value.code == 2
    code, out, _ = run(capsys, "bch", h3_path, "--x", "1,0", "--y", "0,1,0")
    assert code == 1
    assert json.loads(out)["error"] == "DimensionMismatch"


def test_missing_file_is_a_usage_error(tmp_path: Path) -> None:
    with pytest.raises(SystemExit) as info:
        main(["analyze", str(tmp_path / "absent.json")])
    assert info.value.code == 2


def test_corpus(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    code, out, _ = run(capsys, "corpus", "heisenberg", "3")
    assert code == 0
    assert json.loads(out)["name"] == "h3"

    code, out, _ = run(capsys, "corpus", "heisenberg", "4")
    assert code == 1
    assert json.loads(out)["error"] == "BadParameter"

    target = tmp_path / "fn23.json"
    code, out, _ = run(capsys, "corpus", "free_nilpotent_2_3", "--out", str(target))
    assert (code, out) == (0, "")
    assert json.loads(target.read_text(encoding="utf-8"))["dim"] == 5


def test_represent_output_is_byte_identical(capsys: pytest.CaptureFixture[str], h3_path: str, tmp_path: Path) -> None:
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "represent", h3_path, "--out", str(first))[0] == 0
    assert run(capsys, "--quiet", "represent", h3_path, "--out", str(second))[0] == 0
    assert first.read_bytes() == second.read_bytes()
    assert json.loads(first.read_text(encoding="utf-8"))["dim_FG"] == 4


def test_verify(capsys: pytest.CaptureFixture[str], h3_path: str) -> None:
    code, out, err = run(capsys, "verify", h3_path, *FAST)
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] and doc["samples"] == 4
    assert "All checks passed" in err


def test_quiet_silences_progress(capsys: pytest.CaptureFixture[str], a1_path: str) -> None:
    code, _, err = run(capsys, "--quiet", "verify", a1_path, *FAST)
    assert code == 0
    assert err == ""


def test_report(capsys: pytest.CaptureFixture[str], h3_path: str, a1_path: str, tmp_path: Path) -> None:
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "--quiet", "report", h3_path, a1_path, "--out", str(target), *FAST)
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("algebra")
    assert lines[2].split()[0] == "h3" and lines[2].split()[-1] == "pass"
    assert lines[3].split()[0] == "a1"
    assert len(json.loads(target.read_text(encoding="utf-8"))["reports"]) == 2


def test_dimension_cap_from_environment(capsys: pytest.CaptureFixture[str], h3_path: str, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("NILREP_MAX_DIM", "2")
    code, out, _ = run(capsys, "analyze", h3_path)
    assert code == 1
    assert json.loads(out)["error"] == "BadParameter"


def test_unexpected_failure_is_logged(capsys: pytest.CaptureFixture[str], h3_path: str, monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
    def explode(*_: Any) -> Any:
        raise RuntimeError("boom")

    monkeypatch.setattr(api, "analyze", explode)
    code, out, err = run(capsys, "analyze", h3_path)
    assert code == 1
    assert out == ""
    assert "See the log file" in err
    log_path = tmp_path / "state" / "nilrep" / "error_log.txt"
    assert os.path.exists(log_path)
    assert "RuntimeError: boom" in log_path.read_text(encoding="utf-8")


def test_report_without_out_writes_json_to_stdout(capsys: pytest.CaptureFixture[str], h3_path: str, a1_path: str) -> None:
    code, out, err = run(capsys, "--quiet", "report", h3_path, a1_path, *FAST)
    assert code == 0
    doc = json.loads(out)
    assert [row["name"] for row in doc["rows"]] == ["h3", "a1"]
    assert doc["rows"][0]["bound"] == 5
    table = err.splitlines()
    assert table[0].startswith("algebra")
    assert table[2].split() == [str(doc["rows"][0][k]) for k in ("name", "dim_g", "N", "dim_FG", "measured_index", "bound")] + ["pass"]


def test_coefficients_beyond_the_default_digit_limit(capsys: pytest.CaptureFixture[str], write_doc: Callable[[str, Any], str]) -> None:
    big = "1" + "0" * 5000
    path = write_doc("h3_big.json", {"dim": 3, "brackets": [{"i": 0, "j": 1, "coeffs": ["0", "0", big]}]})
    code, out, _ = run(capsys, "bch", path, "--x", "1,0,0", "--y", "0,1,0")
    assert code == 0
    assert json.loads(out)["product"] == ["1", "1", "5" + "0" * 4999]
