"""Exact real quadratic field arithmetic."""

from exactfield.quadnum import (
    DivisionByZero,
    MixedField,
    Ordering,
    QuadNum,
    qn_arith,
    qn_cmp,
    qn_from_json,
    qn_sign,
    qn_to_float,
    qn_to_json,
    sqrt_free_part,
)
from exactfield.lift_height import LiftHeight, lift_height_of_slope

__all__ = [
    # Values
    "QuadNum",
    "Ordering",
    "LiftHeight",
    # Operations
    "qn_arith",
    "qn_cmp",
    "qn_sign",
    "qn_to_float",
    "qn_to_json",
    "qn_from_json",
    "sqrt_free_part",
    "lift_height_of_slope",
    # Errors
    "DivisionByZero",
    "MixedField",
]
