#!/usr/bin/env python3
"""
Command-line entry point for veering triangulations of drilled torus bundles.

Subcommands:
    build     assemble the veering triangulation and run the axiom checks
    pipeline  position the diagonal system and check the slope criteria
    certify   sample the bicontact forms and one filling model
    svg       draw a pipeline document's diagonals over their rectangles

Usage:
    python run_veering.py build --word LR --out out/lr.json
    python run_veering.py pipeline --word LR --window=-3/2,3/2,-3/2,3/2 --out out/lr_pipeline.json
    python run_veering.py certify --pq 3/2 --grid 64
    python run_veering.py svg --input out/lr_pipeline.json --out out/lr.svg

Exit codes: 0 success, 1 invalid input, 2 a checked property failed,
3 internal invariant breach. Logs go to standard error.
"""

import argparse
import logging
import math
import sys
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

from bicontact.certify import Certificate, certify_fiber_forms, certify_filling
from bicontact.profiles import FillingParams
from core.errors import (
    EXIT_INVALID_INPUT,
    EXIT_OK,
    EXIT_VERIFICATION_FAILED,
    InvalidInputError,
    VeerError,
    exit_code_for,
)
from core.run_artifacts import dump_document, read_document, write_document, write_run_report
from core.run_config import RunConfig, load_run_config, resolve_strict_config, run_config_from_mapping
from core.structured_logging import configure_structured_logging, derive_run_id, phase_scope, set_run_id
from diagonals.render import render_system
from diagonals.system import DiagonalSystem
from exactfield.quadnum import qn_from_json
from orbitspace.config import DEFAULT_WINDOW_RADIUS, resolve_point_budget
from orbitspace.monodromy import MonodromySpec, load_monodromy_spec, load_punctures, parse_monodromy_spec
from orbitspace.points import drilled_set, puncture_set
from orbitspace.space import OrbitSpace, Window, build_orbit_space
from perturb.pipeline import PipelineConfig, run_pipeline
from triangulate.assemble import UnmatchedFace, assemble
from triangulate.encoding import canonical_encoding
from triangulate.models import triangulation_to_dict
from triangulate.verify import verify_veering

logger = logging.getLogger(__name__)

GOLDEN_SQUARED: float = (3 + math.sqrt(5)) / 2

Handler = Callable[[argparse.Namespace, RunConfig, dict[str, Any]], int]


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="YAML run config; flags override its values.")
    parser.add_argument(
        "--log-level",
        default="INFO",
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
        help="Log level for standard error (default: INFO).",
    )
    parser.add_argument("--report-dir", help="Directory for the JSON run report.")
    parser.add_argument(
        "--strict-config",
        action="store_true",
        default=resolve_strict_config(default=False),
        help="Fail on config read/validation problems (default from VEER_STRICT_CONFIG).",
    )
    parser.add_argument("--seed", type=int, help="Seed recorded with the run (randomized test configs).")
    parser.add_argument("--out", help="Output path; the document goes to standard output when omitted.")


def _add_monodromy(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--word", help="Monodromy as a word in L and R, e.g. LR.")
    source.add_argument("--matrix", help="Monodromy matrix as a,b,c,d.")
    source.add_argument("--spec", help="YAML monodromy spec with word/matrix/drill keys.")
    parser.add_argument("--drill", help="Drilled periodic orbit as k:x,y (default 1:0,0).")
    parser.add_argument("--window", help="Window s0,s1,u0,u1 in eigen-coordinates (rationals).")
    parser.add_argument(
        "--point-budget",
        type=int,
        help="Maximum points one window scan may produce (default from VEER_POINT_BUDGET).",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Veering triangulations of drilled Anosov torus bundles",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=(
            "Examples:\n"
            "  python run_veering.py build --word LR --out out/lr.json\n"
            "  python run_veering.py certify --pq 3/2 --grid 64\n"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="Assemble and verify the veering triangulation.")
    _add_monodromy(build)
    _add_common(build)
    build.set_defaults(func=cmd_build)

    pipeline = sub.add_parser("pipeline", help="Position the diagonal system and check the criteria.")
    _add_monodromy(pipeline)
    pipeline.add_argument("--punctures", help="YAML list of puncture points [[x, y], ...] in the torus.")
    pipeline.add_argument("--height-bound", type=int, help="Lift height bound (default: computed).")
    pipeline.add_argument("--eps-floor", type=float, help="Smallest scale the peel, round and rotate loops may try.")
    _add_common(pipeline)
    pipeline.set_defaults(func=cmd_pipeline)

    certify = sub.add_parser("certify", help="Sample the bicontact forms and a filling model.")
    certify.add_argument("--pq", required=True, help="Filling slope as P/Q with P >= 1 and Q != 0.")
    lam = certify.add_mutually_exclusive_group()
    lam.add_argument("--lambda", dest="lam", type=float, help="Stretch factor (default: that of LR).")
    lam.add_argument("--word", help="Take the stretch factor of this monodromy word.")
    certify.add_argument("--grid", type=int, help="Samples per axis.")
    certify.add_argument("--tol", type=float, help="Margin tolerance.")
    _add_common(certify)
    certify.set_defaults(func=cmd_certify)

    svg = sub.add_parser("svg", help="Draw a pipeline document as SVG.")
    svg.add_argument("--input", required=True, help="Document written by the pipeline subcommand.")
    _add_common(svg)
    svg.set_defaults(func=cmd_svg)
    return parser


def resolve_run_config(args: argparse.Namespace) -> RunConfig:
    """Config file values, then command-line overrides, validated strictly."""
    cfg = load_run_config(args.config, command=args.command, strict=args.strict_config)
    window = getattr(args, "window", None)
    overrides = {
        "input_path": getattr(args, "input", None) or getattr(args, "spec", None) or getattr(args, "punctures", None),
        "output_path": args.out,
        "window": window,
        "point_budget": getattr(args, "point_budget", None),
        "grid": getattr(args, "grid", None),
        "tolerance": getattr(args, "tol", None),
        "epsilon_floor": getattr(args, "eps_floor", None),
        "seed": args.seed,
        "report_dir": args.report_dir,
    }
    payload = {k: v for k, v in cfg.to_dict().items() if k not in ("command", "extras")}
    payload.update({k: v for k, v in overrides.items() if v is not None})
    return run_config_from_mapping({**cfg.extras, **payload}, command=args.command, strict=True)


def _point_budget(args: argparse.Namespace, cfg: RunConfig) -> int:
    if getattr(args, "point_budget", None) is None and not args.config:
        return resolve_point_budget()
    return cfg.point_budget


# ---------------------------------------------------------------------------
# Inputs
# ---------------------------------------------------------------------------


def monodromy_from_args(args: argparse.Namespace) -> MonodromySpec:
    if args.spec:
        spec = load_monodromy_spec(args.spec)
        if args.drill:
            spec = parse_monodromy_spec({**spec.to_dict(), "drill": args.drill})
        return spec
    if not args.word and not args.matrix:
        raise InvalidInputError("one of --word, --matrix or --spec is required")
    payload: dict[str, Any] = {"word": args.word, "matrix": args.matrix}
    if args.drill:
        payload["drill"] = args.drill
    return parse_monodromy_spec(payload)


def window_for(cfg: RunConfig, os: OrbitSpace) -> Window:
    if cfg.window is not None:
        window = Window.parse(list(cfg.window), os.D)
    else:
        r = os.q(DEFAULT_WINDOW_RADIUS)
        window = Window(-r, r, -r, r)
    if window.is_degenerate():
        raise InvalidInputError(f"window is empty: {cfg.window!r}")
    return window


def parse_slope(raw: str) -> tuple[int, int]:
    """Parse ``P/Q`` into integers."""
    p_text, sep, q_text = raw.partition("/")
    try:
        p, q = int(p_text), int(q_text)
    except ValueError as exc:
        raise InvalidInputError(f"--pq must look like P/Q, got {raw!r}") from exc
    if not sep:
        raise InvalidInputError(f"--pq must look like P/Q, got {raw!r}")
    return p, q


def _emit(document: dict[str, Any], out: Optional[str]) -> Optional[str]:
    if out:
        path = write_document(document, out)
        logger.info("Document written: %s", path)
        return path
    sys.stdout.write(dump_document(document))
    return None


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_build(args: argparse.Namespace, cfg: RunConfig, report: dict[str, Any]) -> int:
    """Assemble one tetrahedron per rectangle orbit and check the veering axioms."""
    spec = monodromy_from_args(args)
    os = build_orbit_space(spec)
    C = drilled_set(os)
    window = window_for(cfg, os) if cfg.window is not None else None
    budget = _point_budget(args, cfg)
    try:
        with phase_scope("assemble"):
            tri = assemble(os, C, window, budget)
    except UnmatchedFace as exc:
        logger.error("%s; widen the window or raise VEER_POINT_BUDGET (now %d)", exc, budget)
        raise
    with phase_scope("verify"):
        checks = verify_veering(tri)
        encoding = canonical_encoding(tri)

    report["num_tetrahedra"] = tri.num_tetrahedra
    report["canonical_encoding"] = encoding
    report["failed_checks"] = checks.failed_checks()
    document = {
        "command": "build",
        "monodromy": spec.to_dict(),
        "triangulation": triangulation_to_dict(tri),
        "canonical_encoding": encoding,
        "verification": checks.to_dict(),
    }
    report["output"] = _emit(document, cfg.output_path)
    if not checks.passed:
        logger.error("Veering axioms failed: %s", ", ".join(checks.failed_checks()))
        return EXIT_VERIFICATION_FAILED
    logger.info("Triangulation: %d tetrahedra, encoding %s", tri.num_tetrahedra, encoding)
    return EXIT_OK


def cmd_pipeline(args: argparse.Namespace, cfg: RunConfig, report: dict[str, Any]) -> int:
    """Run anchors through the criteria and emit the final diagonal system."""
    spec = monodromy_from_args(args)
    os = build_orbit_space(spec)
    C = drilled_set(os)
    window = window_for(cfg, os)
    punctures = None
    if args.punctures:
        with phase_scope("punctures"):
            punctures = puncture_set(os, load_punctures(args.punctures))
    config = PipelineConfig(
        height_bound=args.height_bound,
        point_budget=_point_budget(args, cfg),
        scale_floor=Fraction(cfg.epsilon_floor),
    )
    result = run_pipeline(os, C, punctures, window, config)

    report["verdict"] = result.verdict
    report["failing_stage"] = result.failing_stage
    document = {
        "command": "pipeline",
        "monodromy": spec.to_dict(),
        "window": window.to_dict(),
        "punctures": punctures.to_dict() if punctures is not None else None,
        "config": config.to_dict(),
        **result.to_dict(),
    }
    report["output"] = _emit(document, cfg.output_path)
    if not result.verdict:
        logger.error("Pipeline failed at stage %s", result.failing_stage)
        return EXIT_VERIFICATION_FAILED
    logger.info("Pipeline verdict: clean (height bound %s)", result.height_bound)
    return EXIT_OK


def _stretch_factor(args: argparse.Namespace) -> float:
    if args.lam is not None:
        return args.lam
    if args.word:
        return build_orbit_space(parse_monodromy_spec({"word": args.word})).lam_float
    return GOLDEN_SQUARED


def cmd_certify(args: argparse.Namespace, cfg: RunConfig, report: dict[str, Any]) -> int:
    """Certify the fiber forms and the filling model of slope ``P/Q``."""
    p, q = parse_slope(args.pq)
    lam = _stretch_factor(args)
    params = FillingParams.for_slope(p, q, lam)
    with phase_scope("fiber_forms"):
        fiber = certify_fiber_forms(lam, cfg.grid)
    with phase_scope("filling"):
        filling = certify_filling(params, grid=cfg.grid, tol=cfg.tolerance)
    certificates: list[Certificate] = [fiber, filling]

    passed = all(c.passed for c in certificates)
    failing = [c for c in certificates if not c.passed]
    worst = min((c.worst() for c in failing), key=lambda m: m.slack, default=None)
    report["passed"] = passed
    report["worst_margin"] = worst.name if worst is not None else None
    document = {
        "command": "certify",
        "slope": f"{p}/{q}",
        "lam": lam,
        "passed": passed,
        "certificates": [c.to_dict() for c in certificates],
    }
    report["output"] = _emit(document, cfg.output_path)
    if worst is not None:
        logger.error(
            "Worst margin %s: value %.6g, needs %s %.6g",
            worst.name,
            worst.value,
            worst.relation,
            worst.bound,
        )
        return EXIT_VERIFICATION_FAILED
    return EXIT_OK


def cmd_svg(args: argparse.Namespace, cfg: RunConfig, report: dict[str, Any]) -> int:
    """Render the diagonals of a pipeline document over its window."""
    document = read_document(cfg.input_path or args.input)
    if document.get("command") != "pipeline" or not document.get("diagonals"):
        raise InvalidInputError("svg needs a pipeline document with a diagonal system")
    os = build_orbit_space(parse_monodromy_spec(document["monodromy"]))
    system = DiagonalSystem.from_dict(os, drilled_set(os), document["diagonals"])
    exact = document["window"]["exact"]
    window = Window(*(qn_from_json(v) for v in (*exact["s"], *exact["u"])))
    with phase_scope("render"):
        figure = render_system(system, window)
    report["polylines"] = figure.count("<polyline")
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as f:
            f.write(figure)
        logger.info("Figure written: %s", cfg.output_path)
        report["output"] = cfg.output_path
    else:
        sys.stdout.write(figure)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv``, run one subcommand and return its exit code."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; that code means a failed check here
        return EXIT_OK if exc.code in (0, None) else EXIT_INVALID_INPUT
    configure_structured_logging(level=getattr(logging, args.log_level))

    run_report: dict[str, Any] = {"command": args.command, "status": "failed"}
    set_run_id(f"{args.command}-invalid")
    try:
        cfg = resolve_run_config(args)
    except InvalidInputError as exc:
        logger.error("Invalid configuration: %s", exc)
        return EXIT_INVALID_INPUT

    run_id = set_run_id(derive_run_id(args.command, {**cfg.to_dict(), "argv": list(argv or sys.argv[1:])}))
    run_report["run_id"] = run_id
    run_report["config"] = cfg.to_dict()

    logger.info("")
    logger.info("*" * 80)
    logger.info(" veerpos %s", args.command)
    logger.info(" Run ID: %s", run_id)
    logger.info("*" * 80)
    logger.info("")

    handler: Handler = args.func
    try:
        with phase_scope(args.command):
            code = handler(args, cfg, run_report)
        run_report["status"] = "success" if code == EXIT_OK else "verification_failed"
    except VeerError as exc:
        code = exit_code_for(exc)
        logger.error("%s failed: %s: %s", args.command, type(exc).__name__, exc)
        run_report["error"] = f"{type(exc).__name__}: {exc}"
    except Exception as exc:
        code = exit_code_for(exc)
        logger.error("%s failed: %s", args.command, exc, exc_info=True)
        run_report["error"] = str(exc)
    run_report["exit_code"] = code

    report_path = write_run_report(run_report, run_id, cfg.report_dir)
    logger.info("Run report written: %s", report_path)
    return code


if __name__ == "__main__":
    sys.exit(main())
