from __future__ import annotations

import json
from collections.abc import Callable
from pathlib import Path
from typing import Any

import pytest

from nilrep import corpus
from nilrep.lie import LieAlgebra


@pytest.fixture(autouse=True)
def isolated_config(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    """Keeps a user's nilrep.ini, NILREP_MAX_DIM and log directory out of the tests."""
    monkeypatch.setenv("NILREP_CONFIG", str(tmp_path / "absent.ini"))
    monkeypatch.setenv("XDG_STATE_HOME", str(tmp_path / "state"))
    monkeypatch.delenv("NILREP_MAX_DIM", raising=False)


@pytest.fixture
def h3() -> LieAlgebra:
    return corpus.heisenberg(3)


@pytest.fixture
def h5() -> LieAlgebra:
    return corpus.heisenberg(5)


@pytest.fixture
def a1() -> LieAlgebra:
    return corpus.abelian(1)


@pytest.fixture
def a2() -> LieAlgebra:
    return corpus.abelian(2)


@pytest.fixture
def f4() -> LieAlgebra:
    return corpus.filiform(4)


@pytest.fixture
def f5() -> LieAlgebra:
    return corpus.filiform(5)


@pytest.fixture
def u4() -> LieAlgebra:
    return corpus.strict_upper(4)


@pytest.fixture
def fn23() -> LieAlgebra:
    return corpus.free_nilpotent_2_3()


@pytest.fixture
def so3_doc() -> dict[str, Any]:
    return {
        "name": "so3",
        "dim": 3,
        "brackets": [
            {"i": 0, "j": 1, "coeffs": ["0", "0", "1"]},
            {"i": 1, "j": 2, "coeffs": ["1", "0", "0"]},
            {"i": 0, "j": 2, "coeffs": ["0", "-1", "0"]},
        ],
    }


@pytest.fixture
def write_doc(tmp_path: Path) -> Callable[[str, Any], str]:
    def write(name: str, doc: Any) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc, encoding="utf-8")
        return str(path)
    return write


@pytest.fixture
def h3_path(write_doc: Callable[[str, Any], str], h3: LieAlgebra) -> str:
    return write_doc("h3.json", h3.to_json())


@pytest.fixture
def a1_path(write_doc: Callable[[str, Any], str], a1: LieAlgebra) -> str:
    return write_doc("a1.json", a1.to_json())
