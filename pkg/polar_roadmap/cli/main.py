"""
Command-line entry point: ``python -m polar_roadmap.cli.main --job FILE --out DIR``.

Exit status: 0 on success, 1 on input errors, 2 on violated assumptions or
failed verdicts, 3 when a computation budget runs out.
"""
import argparse
from fractions import Fraction
import logging
from pathlib import Path
import sys
import time
from typing import Any, Dict, List, Optional, Sequence

import structlog

from polar_roadmap import __version__
from polar_roadmap.cli.jobfile import Command, JobSpec, read_job
from polar_roadmap.common.config import EngineSettings
from polar_roadmap.common.errors import InvalidInputError, RoadmapError
from polar_roadmap.common.logging import configure_logging
from polar_roadmap.common.schemas.assumptions import AssumptionStatus
from polar_roadmap.common.schemas.connectivity import Verdict
from polar_roadmap.common.schemas.errors import EXIT_CODES, ErrorCode, ErrorResponse
from polar_roadmap.common.schemas.reports import ReportEnvelope, ReportMetadata
from polar_roadmap.common.serialization import dumps, interval_pair, rational_text, write_csv, write_json
from polar_roadmap.connectivity import (
    check_bounded_component_critical,
    export_points,
    export_roadmap,
    slice_trace_curve,
    verify_rm,
    verify_rm_sweep,
)
from polar_roadmap.connectivity.numeric import CompiledSystem
from polar_roadmap.geometry import PolyMap, critical_ideal, critical_points_ideal
from polar_roadmap.groebner.ideal import Ideal
from polar_roadmap.roadmap import assemble_roadmap, check_assumption_A, check_assumption_P, check_assumptions
from polar_roadmap.zerodim import ZeroDimensionalSystem

logger = logging.getLogger(__name__)


class Outcome:
    """What a command produced: the report body, extra files and whether its verdict failed."""

    def __init__(self, result: Dict[str, Any], failed: bool = False):
        self.result = result
        self.failed = failed
        self.files: Dict[str, Any] = {}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polar-roadmap",
        description="Polar varieties, critical loci and roadmaps of real algebraic sets.",
    )
    parser.add_argument("--job", required=True, help="job file")
    parser.add_argument("--out", default="out", help="output directory")
    parser.add_argument("--seed", type=int, help="override the job seed")
    parser.add_argument("--budget-pairs", type=int, dest="budget_pairs", help="override max_pairs")
    parser.add_argument("--tolerance", help="override the numerical tolerance (rational)")
    parser.add_argument("--format", choices=("json", "csv"), default="json", help="also write CSV plot data with csv")
    parser.add_argument("--log-level", default="INFO", dest="log_level")
    parser.add_argument("--log-json", action="store_true", dest="log_json")
    return parser


def _tolerance(text: Optional[str]) -> Optional[float]:
    if text is None:
        return None
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise InvalidInputError(f"not a rational tolerance: {text!r}") from None


def _solution_summary(system: ZeroDimensionalSystem, width: Fraction) -> Dict[str, Any]:
    return system.solution_set(width).to_model().model_dump(mode="json")


def run_critical(job: JobSpec, settings: EngineSettings) -> Outcome:
    variety = job.variety(settings)
    phi = job.phi_poly()
    phi1 = phi if phi is not None else job.build_map(settings).first
    k = critical_points_ideal(variety, phi1).k_ideal
    result: Dict[str, Any] = {
        "phi": str(phi1),
        "k_generators": k.generator_strings(),
        "critical_points": _solution_summary(ZeroDimensionalSystem(k, settings), settings.box_width),
    }
    if job.map is not None and job.i is not None:
        locus = critical_ideal(variety, job.build_map(settings), job.i)
        result["w_locus"] = {
            "prefix": locus.prefix,
            "minor_size": locus.minor_size,
            "w_generators": locus.w_ideal.generator_strings(),
            "singular_locus_empty": not locus.has_singular_points,
        }
    return Outcome(result)


def run_check(job: JobSpec, settings: EngineSettings) -> Outcome:
    variety = job.variety(settings)
    phi = job.phi_poly()
    if phi is not None and (job.map is None or job.i is None):
        checks = [check_assumption_A(variety), check_assumption_P(PolyMap(variety.ring, (phi,)))]
        result = {"checks": {c.name: c.model_dump(mode="json") for c in checks}}
        return Outcome(result, failed=any(c.status is AssumptionStatus.VIOLATED for c in checks))
    report = check_assumptions(variety, job.build_map(settings), job.i, settings)
    return Outcome({"assumptions": report.model_dump(mode="json")}, failed=bool(report.violations))


def _roadmap(job: JobSpec, settings: EngineSettings):
    variety = job.variety(settings)
    phi = job.build_map(settings)
    return variety, assemble_roadmap(variety, phi, job.i, settings, printed=job.printed_poly())


def run_roadmap(job: JobSpec, settings: EngineSettings) -> Outcome:
    _, bundle = _roadmap(job, settings)
    model = bundle.to_model()
    sample = bundle.sample_set.solutions
    outcome = Outcome({
        "certificate": bundle.certificate.value,
        "sample_set": {"distinct": sample.distinct_count, "real": sample.real_count},
        "critical_values": [list(interval_pair(v)) for v in bundle.critical_values],
        "polar_match": bundle.polar_match,
    })
    outcome.files["bundle.json"] = model
    return outcome


def run_verify(job: JobSpec, settings: EngineSettings, fmt: str) -> Outcome:
    u = job.u_value()
    if job.phi is not None and (job.map is None or job.i is None):
        variety = job.variety(settings)
        if u is None:
            raise InvalidInputError("the bounded-component check needs u")
        report = check_bounded_component_critical(variety.ideal, job.phi_poly(), u, settings)
        return Outcome({"bounded_components": report.model_dump(mode="json")}, failed=report.verdict is Verdict.FAIL)

    variety, bundle = _roadmap(job, settings)
    if job.ablate_fibers:
        bundle = bundle.without_fibers()
    include = not job.ablate_fibers
    if u is None:
        sweep = verify_rm_sweep(variety, bundle, settings=settings, include_fibers=include)
        return Outcome({"sweep": sweep.model_dump(mode="json")}, failed=sweep.verdict is Verdict.FAIL)
    verification = verify_rm(variety, bundle, u, settings, include_fibers=include)
    outcome = Outcome({"connectivity": verification.report.model_dump(mode="json")}, failed=verification.report.verdict is Verdict.FAIL)
    if fmt == "csv":
        outcome.files["points.csv"] = lambda path: export_points(path, verification)
        outcome.files["roadmap.csv"] = lambda path: export_roadmap(path, verification, CompiledSystem(variety.generators))
    return outcome


def run_solve0d(job: JobSpec, settings: EngineSettings) -> Outcome:
    ring = job.ring()
    polys = job.system_polys() or job.generators(ring)
    system = ZeroDimensionalSystem(Ideal(ring, polys, settings), settings)
    return Outcome({"solutions": _solution_summary(system, settings.box_width)})


def run_slice(job: JobSpec, settings: EngineSettings, fmt: str) -> Outcome:
    ring = job.ring()
    curve = Ideal(ring, job.generators(ring), settings)
    phi = job.phi_poly()
    phi1 = phi if phi is not None else job.build_map(settings).first
    trace = slice_trace_curve(curve, phi1, job.level_values(), settings=settings)
    outcome = Outcome({
        "levels": [rational_text(t) for t in trace.levels],
        "counts": trace.counts,
        "perturbed": trace.perturbed,
        "polylines": [
            {"branch": line.branch, "vertices": [[float(x) for x in v] for v in line.vertices]}
            for line in trace.polylines
        ],
    })
    if fmt == "csv":
        def export(path):
            residual = CompiledSystem(curve.generators)
            rows: List[List[Any]] = []
            for line in trace.polylines:
                values = residual.residuals(line.vertices)
                rows.extend([line.branch] + [repr(float(x)) for x in v] + [repr(float(r))] for v, r in zip(line.vertices, values))
            write_csv(path, ["branch"] + list(ring.names) + ["residual"], rows)
        outcome.files["roadmap.csv"] = export
    return outcome


def run(job: JobSpec, settings: EngineSettings, fmt: str = "json") -> Outcome:
    """Dispatch a parsed job to its command."""
    command = job.command
    if command is Command.CRITICAL:
        return run_critical(job, settings)
    if command is Command.CHECK:
        return run_check(job, settings)
    if command is Command.ROADMAP:
        return run_roadmap(job, settings)
    if command is Command.VERIFY:
        return run_verify(job, settings, fmt)
    if command is Command.SOLVE0D:
        return run_solve0d(job, settings)
    return run_slice(job, settings, fmt)


def _write_error(out: Path, response: ErrorResponse) -> None:
    text = dumps(response)
    sys.stderr.write(text)
    try:
        out.mkdir(parents=True, exist_ok=True)
        (out / "error.json").write_text(text, encoding="utf-8")
    except OSError:
        logger.error("could not write error.json to %s", out)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level, args.log_json)
    out = Path(args.out)
    started = time.monotonic()
    try:
        job = read_job(args.job)
        structlog.contextvars.bind_contextvars(job_hash=job.job_hash[:12], command=job.command.value)
        settings = job.engine_settings(
            seed=args.seed, max_pairs=args.budget_pairs, tolerance=_tolerance(args.tolerance),
        )
        logger.info("running %s", job.command.value)
        outcome = run(job, settings, args.format)
    except RoadmapError as exc:
        logger.error("%s failed: %s", exc.code.value, exc.message)
        _write_error(out, exc.to_response())
        return exc.exit_code
    except Exception as exc:
        logger.exception("unexpected error")
        _write_error(out, ErrorResponse(message=str(exc) or type(exc).__name__, code=ErrorCode.INTERNAL_ERROR))
        return EXIT_CODES[ErrorCode.INTERNAL_ERROR]
    finally:
        structlog.contextvars.clear_contextvars()

    envelope = ReportEnvelope(
        job_hash=job.job_hash,
        command=job.command.value,
        result=outcome.result,
        metadata=ReportMetadata(version=__version__, duration_seconds=time.monotonic() - started),
    )
    write_json(out / "report.json", envelope)
    for name, payload in outcome.files.items():
        if callable(payload):
            payload(out / name)
        else:
            write_json(out / name, payload)
    if outcome.failed:
        return EXIT_CODES[ErrorCode.VERIFICATION_FAILED]
    return 0


if __name__ == "__main__":
    sys.exit(main())
