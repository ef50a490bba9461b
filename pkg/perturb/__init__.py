"""Perturbing PL diagonal systems into position, and the final criteria."""

from exactfield.lift_height import LiftHeight, lift_height_of_slope
from perturb.criteria import check_crossing, check_face_embeddedness, check_slope_criterion
from perturb.heights import flank_heights, height_bound, lift_segment_heights, segment_lift_height
from perturb.overlaps import (
    NoOverlap,
    Overlap,
    bookkeeping_nodes,
    find_overlaps,
    find_peripheral_elementary,
    progress_measure,
)
from perturb.peel import peel, peel_to_fixpoint
from perturb.pipeline import PipelineConfig, PipelineResult, run_pipeline
from perturb.rotate import Misalignment, find_misalignments, rotate_misalignments
from perturb.rounding import NeighborhoodClash, round_arc, round_corners
from perturb.scales import ScaleRejected

__all__ = [
    # Heights
    "LiftHeight",
    "flank_heights",
    "height_bound",
    "lift_height_of_slope",
    "lift_segment_heights",
    "segment_lift_height",
    # Overlaps and peeling
    "Overlap",
    "bookkeeping_nodes",
    "find_overlaps",
    "find_peripheral_elementary",
    "peel",
    "peel_to_fixpoint",
    "progress_measure",
    # Rounding and rotation
    "Misalignment",
    "find_misalignments",
    "round_arc",
    "round_corners",
    "rotate_misalignments",
    # Criteria
    "check_crossing",
    "check_face_embeddedness",
    "check_slope_criterion",
    # Pipeline
    "PipelineConfig",
    "PipelineResult",
    "run_pipeline",
    # Errors
    "NeighborhoodClash",
    "NoOverlap",
    "ScaleRejected",
]
