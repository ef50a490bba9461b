"""Sequential driver for the positioning pipeline.

anchors -> buoys -> PL diagonals -> PL goal check -> peel -> round ->
rotate -> criteria. Each stage consumes the previous stage's system and
leaves one report. A stage that raises a ``VeerError`` ends the run with a
failed report naming it; later stages are not attempted.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional, TypeVar

from anchors.system import AnchorSystem, build_anchor_system, verify_anchor_system
from core.errors import VeerError
from core.structured_logging import phase_scope
from core.verification import CheckReport, merge_status
from diagonals.buoys import place_buoys
from diagonals.config import BUOY_ROUNDS
from diagonals.system import DiagonalSystem, build_pl_diagonals, diagonal_system_to_dict, straight_diagonals
from diagonals.verify import verify_plo
from orbitspace.points import PointOrbitSet
from orbitspace.space import OrbitSpace, Window
from perturb.config import (
    PEEL_EPS_FLOOR,
    PEEL_EPS_START,
    PEEL_MAX_STEPS,
    ROTATE_EPS_START,
    ROTATE_SPAN_FLOOR,
    ROUND_RESOLUTION,
    ROUND_SPAN_FLOOR,
)
from perturb.criteria import check_crossing, check_face_embeddedness, check_slope_criterion
from perturb.heights import height_bound
from perturb.peel import peel_to_fixpoint
from perturb.rotate import find_misalignments, rotate_misalignments
from perturb.rounding import round_corners
from rectangles.tetra import enumerate_tetra_rects

logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass(frozen=True)
class PipelineConfig:
    height_bound: Optional[int] = None
    point_budget: Optional[int] = None
    buoy_rounds: int = BUOY_ROUNDS
    peel_eps: Fraction = PEEL_EPS_START
    peel_max_steps: int = PEEL_MAX_STEPS
    round_resolution: int = ROUND_RESOLUTION
    rotate_eps: Fraction = ROTATE_EPS_START
    scale_floor: Optional[Fraction] = None

    def floor_for(self, default: Fraction) -> Fraction:
        """``scale_floor`` when set, else the stage default."""
        return self.scale_floor if self.scale_floor is not None else default

    def to_dict(self) -> dict[str, Any]:
        return {
            "height_bound": self.height_bound,
            "point_budget": self.point_budget,
            "buoy_rounds": self.buoy_rounds,
            "peel_eps": str(self.peel_eps),
            "peel_max_steps": self.peel_max_steps,
            "round_resolution": self.round_resolution,
            "rotate_eps": str(self.rotate_eps),
            "scale_floor": str(self.scale_floor) if self.scale_floor is not None else None,
        }


@dataclass
class PipelineResult:
    stages: list[CheckReport] = field(default_factory=list)
    progress_history: list[int] = field(default_factory=list)
    verdict: bool = False
    failing_stage: Optional[str] = None
    height_bound: Optional[int] = None
    system: Optional[DiagonalSystem] = None

    def stage(self, name: str) -> Optional[CheckReport]:
        return next((r for r in self.stages if r.name == name), None)

    def to_dict(self) -> dict[str, Any]:
        return {
            "verdict": self.verdict,
            "failing_stage": self.failing_stage,
            "height_bound": self.height_bound,
            "progress_history": list(self.progress_history),
            "stages": [r.to_dict() for r in self.stages],
            "diagonals": diagonal_system_to_dict(self.system) if self.system is not None else None,
        }


class _StageFailed(Exception):
    def __init__(self, stage: str) -> None:
        super().__init__(stage)
        self.stage = stage


def _stage(result: PipelineResult, name: str, window: Window, body: Callable[[CheckReport], T]) -> T:
    report = CheckReport(name=name, window=window.to_dict())
    with phase_scope(name):
        logger.info("=" * 80)
        logger.info("Stage: %s", name)
        try:
            value = body(report)
        except VeerError as exc:
            logger.error("Stage %s failed: %s", name, exc)
            report.status = "failed"
            report.reason = f"{type(exc).__name__}: {exc}"
            result.stages.append(report)
            raise _StageFailed(name) from exc
    result.stages.append(report)
    return value


def _skip(result: PipelineResult, *names: str) -> None:
    for name in names:
        logger.info("Stage %s skipped: straight diagonals", name)
        result.stages.append(CheckReport.skipped(name, "straight"))


def _absorb(report: CheckReport, other: CheckReport) -> None:
    report.checked_pairs += other.checked_pairs
    report.height_bound = other.height_bound
    for v in other.violations:
        report.add(v.check, v.witness, v.detail)


def run_pipeline(
    os: OrbitSpace,
    C: PointOrbitSet,
    punctures: Optional[PointOrbitSet],
    window: Window,
    config: Optional[PipelineConfig] = None,
) -> PipelineResult:
    """Run every stage over ``window`` and collect the reports.

    Without punctures the straight diagonals already satisfy the criteria;
    buoys, peel, round and rotate are reported as skipped.
    """
    config = config or PipelineConfig()
    budget = config.point_budget
    punctured = punctures is not None and len(punctures) > 0
    avoid = punctures if punctured else None
    result = PipelineResult()

    def anchors(report: CheckReport) -> AnchorSystem:
        built = build_anchor_system(os, C, window, avoid=avoid, point_budget=budget)
        _absorb(report, verify_anchor_system(built, os, C, window, avoid=avoid, point_budget=budget))
        return built

    try:
        anchor_system = _stage(result, "anchors", window, anchors)
        if punctured:
            def buoys(report: CheckReport) -> PointOrbitSet:
                placed = place_buoys(os, C, anchor_system, punctures, window, budget, rounds=config.buoy_rounds)
                report.count(len(placed))
                return placed

            buoy_set = _stage(result, "buoys", window, buoys)

            def pl(report: CheckReport) -> DiagonalSystem:
                return build_pl_diagonals(os, C, anchor_system, buoy_set, window, avoid=avoid, point_budget=budget)

            system = _stage(result, "pl_diagonals", window, pl)
        else:
            _skip(result, "buoys")
            system = _stage(result, "pl_diagonals", window, lambda report: straight_diagonals(os, C, window, budget))

        N = config.height_bound if config.height_bound is not None else height_bound(system)
        result.height_bound = N
        _stage(result, "plo", window, lambda report: _absorb(report, verify_plo(system, window, N, avoid, budget)))

        if punctured:
            def peel(report: CheckReport) -> DiagonalSystem:
                peeled, history = peel_to_fixpoint(
                    system, window, N, avoid, budget, config.peel_eps, config.peel_max_steps,
                    config.floor_for(PEEL_EPS_FLOOR),
                )
                result.progress_history = history
                report.count(len(history) - 1)
                return peeled

            system = _stage(result, "peel", window, peel)
            system = _stage(
                result, "round", window,
                lambda report: round_corners(
                    system, config.round_resolution, window, N, budget, floor=config.floor_for(ROUND_SPAN_FLOOR),
                ),
            )

            def rotate(report: CheckReport) -> DiagonalSystem:
                report.count(len(find_misalignments(system, window, N, budget)))
                return rotate_misalignments(
                    system, config.rotate_eps, window, N, budget, floor=config.floor_for(ROTATE_SPAN_FLOOR),
                )

            system = _stage(result, "rotate", window, rotate)
        else:
            _skip(result, "peel", "round", "rotate")

        tetras = _stage(result, "tetrahedra", window, lambda report: enumerate_tetra_rects(os, C, window, budget))
        with phase_scope("criteria"):
            logger.info("=" * 80)
            logger.info("Stage: criteria")
            criteria = [
                check_slope_criterion(system, window, N, budget),
                check_crossing(system, window, N, budget),
                check_face_embeddedness(system, tetras),
            ]
        result.stages.extend(criteria)
        result.system = system
        result.verdict = merge_status(criteria)
        if not result.verdict:
            result.failing_stage = next(r.name for r in criteria if not r.passed)
    except _StageFailed as failed:
        result.failing_stage = failed.stage
        result.verdict = False
    logger.info("Pipeline verdict: %s (failing stage: %s)", result.verdict, result.failing_stage)
    return result
