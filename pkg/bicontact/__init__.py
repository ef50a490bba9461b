"""Numerical certification of the bicontact forms and their solid-torus fillings."""

from bicontact.certify import Certificate, Margin, certify_fiber_forms, certify_filling, certify_sweep
from bicontact.forms import (
    DegreeOverflow,
    FormField,
    ScalarField3,
    ext_d,
    interior,
    richardson_order,
    sample_grid,
    wedge,
)
from bicontact.models import fiber_model, filling_model
from bicontact.profiles import (
    BumpProfile,
    FillingParams,
    ProfileInvalid,
    default_profile,
    profile_hash,
    validate_profile,
)
from bicontact.shell import ShellChart, shell_transition

__all__ = [
    # Forms
    "DegreeOverflow",
    "FormField",
    "ScalarField3",
    "ext_d",
    "interior",
    "richardson_order",
    "sample_grid",
    "wedge",
    # Profiles and models
    "BumpProfile",
    "FillingParams",
    "ProfileInvalid",
    "default_profile",
    "fiber_model",
    "filling_model",
    "profile_hash",
    "validate_profile",
    # Shell
    "ShellChart",
    "shell_transition",
    # Certificates
    "Certificate",
    "Margin",
    "certify_fiber_forms",
    "certify_filling",
    "certify_sweep",
]
