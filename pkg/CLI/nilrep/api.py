from __future__ import annotations

import json
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Optional

from . import bch, corpus, lie, nilpotence, regular, representation, utils
from .config import Settings
from .lie import LieAlgebra
from .linalg import RationalLike, format_rational
from .models import CheckResult, ReportRow, VerificationReport
from .poly import dim_polynomials

TABLE_HEADER = ["algebra", "dim g", "N", "dim F_G", "measured", "bound", "result"]


def dump_json(doc: Any) -> str:
    """Stable JSON text; identical documents always serialize to identical bytes."""
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def write_output(doc: Any, file_path: str) -> None:
    with open(file_path, 'w', encoding='utf-8') as f:
        f.write(dump_json(doc))


def load(path: str, settings: Settings) -> LieAlgebra:
    """Reads and validates an algebra file, refusing dimensions above the configured cap."""
    return lie.load_algebra(path, settings.max_dim)


def validate(g: LieAlgebra) -> dict[str, Any]:
    return {"valid": True, "algebra": g.name, "dim": g.dim, "N": g.N}


def analyze(g: LieAlgebra) -> dict[str, Any]:
    return {
        "algebra": g.name,
        "dim": g.dim,
        "lcs_dims": g.lcs_dims(),
        "N": g.N,
        "center": [[format_rational(c) for c in v] for v in g.center()],
        "bound": g.rep_bound,
        "dim_P_N": dim_polynomials(g.dim, g.N),
    }


def bch_document(g: LieAlgebra, x: Sequence[RationalLike], y: Sequence[RationalLike]) -> dict[str, Any]:
    product = bch.bch_product(g, x, y)
    return {
        "algebra": g.name,
        "x": [format_rational(v) for v in g.element(x)],
        "y": [format_rational(v) for v in g.element(y)],
        "product": [format_rational(v) for v in product],
    }


def represent(g: LieAlgebra) -> representation.Representation:
    utils.progress(f"[{g.name}] Building F_G (degree cap {g.N})")
    space = representation.build_FG(g)
    utils.progress(f"[{g.name}] dim F_G = {space.dim}, assembling generator matrices")
    return representation.Representation.from_space(space)


def corpus_document(family: str, parameter: Optional[int]) -> dict[str, Any]:
    return corpus.make(corpus.CorpusSpec(family, parameter)).to_json()


def _faithfulness_checks(g: LieAlgebra, rep: representation.Representation) -> list[CheckResult]:
    faithful = CheckResult("rep.faithfulness")
    result = representation.faithfulness_check(rep)
    faithful.record(result.is_faithful, rank=result.rank, kernel_dim=result.kernel_dim, dim_g=g.dim)
    faithful.measured["rank"] = result.rank

    control = CheckResult("rep.negative_control")
    truncated = representation.Representation.from_space(representation.negative_control_space(g))
    detected = representation.faithfulness_check(truncated)
    center_dim = len(g.center())
    control.record(not detected.is_faithful and detected.kernel_dim >= center_dim,
                   kernel_dim=detected.kernel_dim, center_dim=center_dim)
    control.measured["kernel_dim"] = detected.kernel_dim
    return [faithful, control]


def verify(g: LieAlgebra, settings: Settings) -> VerificationReport:
    """Runs every exact check on one algebra.

    The group law is sampled twice as often as the other identities. Polynomial-heavy
    checks run on a fraction of the sample count; the matrix identities on F_G use the
    full count.
    """
    samples, seed, height = settings.samples, settings.seed, settings.height

    def part(divisor: int) -> int:
        return max(1, samples // divisor)

    checks: list[CheckResult] = []
    utils.progress(f"[{g.name}] Checking the group law")
    checks += bch.group_axiom_check(g, 2 * samples, seed, height)
    checks += bch.translation_check(g, part(2), seed, height)
    checks.append(bch.coefficient_check())

    utils.progress(f"[{g.name}] Checking the regular representation")
    checks += regular.derivative_checks(g, samples, seed, height)
    checks += lie.subalgebra_check(g, part(2), seed, height)

    rep = represent(g)
    utils.progress(f"[{g.name}] Checking F_G")
    checks.append(representation.invariance_check(rep))
    checks += _faithfulness_checks(g, rep)
    bounds = representation.bound_check(rep, samples, seed, height)
    checks.append(bounds)
    checks += representation.homomorphism_check(rep, samples, seed, height)
    checks += representation.orbit_check(rep, part(2), seed, height)

    utils.progress(f"[{g.name}] Checking single-generator nilpotence")
    checks += nilpotence.family_checks(g, part(4), seed, height)
    checks.append(nilpotence.power_checks(g, part(4), seed, height))
    checks += representation.vphi_checks(g, part(5), seed, height)

    report = VerificationReport(
        algebra=g.name, dim_g=g.dim, N=g.N, bound=rep.bound, dim_FG=rep.dim_rep,
        samples=samples, seed=seed,
        max_nilpotence_index=bounds.measured.get("nilpotence_index", 0),
        max_unipotence_index=bounds.measured.get("unipotence_index", 0),
        checks=checks,
    )
    failed = report.failed_checks()
    utils.progress(f"[{g.name}] " + ("All checks passed" if not failed else "Failed: " + ", ".join(c.name for c in failed)))
    return report


def _verify_path(job: tuple[str, Settings, bool]) -> VerificationReport:
    path, settings, quiet = job
    utils.set_quiet(quiet)
    return verify(load(path, settings), settings)


def report(paths: Sequence[str], settings: Settings, quiet: bool = False) -> list[VerificationReport]:
    """Verifies every file; rows come back in input order whatever the number of workers."""
    for path in paths:
        load(path, settings)
    jobs = [(path, settings, quiet) for path in paths]
    if settings.jobs > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=min(settings.jobs, len(paths))) as executor:
            return list(executor.map(_verify_path, jobs))
    return [_verify_path(job) for job in jobs]


def report_document(reports: Sequence[VerificationReport]) -> dict[str, Any]:
    return {
        "rows": [r.to_row().to_json() for r in reports],
        "reports": [r.to_json() for r in reports],
    }


def render_table(rows: Sequence[ReportRow]) -> str:
    cells = [TABLE_HEADER] + [row.cells() for row in rows]
    widths = [max(len(line[k]) for line in cells) for k in range(len(TABLE_HEADER))]
    lines = ["  ".join(value.ljust(width) for value, width in zip(line, widths)).rstrip() for line in cells]
    lines.insert(1, "  ".join("-" * width for width in widths))
    return "\n".join(lines) + "\n"
