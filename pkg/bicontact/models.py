"""Fiber bicontact forms and the two solid-torus filling models.

Chart coordinates are ``(x, y, z)``. For the fiber forms the slots hold
``(t, s, u)``: flow time and the stable and unstable measures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from bicontact.forms import ExpCurve, FormField, ScalarField3, VectorField3, vector_field
from bicontact.profiles import BumpProfile, FillingParams
from core.errors import InvalidInputError


@dataclass(frozen=True)
class BicontactModel:
    alpha_plus: FormField
    alpha_minus: FormField
    reeb_plus: VectorField3


def fiber_model(lam: float) -> BicontactModel:
    """``alpha_pm = lam^t ds +- lam^-t du`` with ``R_+ = (lam^-t ds* + lam^t du*) / 2``."""
    if not lam > 1.0:
        raise InvalidInputError(f"lam must exceed 1, got {lam}")
    L = math.log(lam)
    up = ScalarField3.along(0, ExpCurve(L), "lam^t")
    down = ScalarField3.along(0, ExpCurve(-L), "lam^-t")
    return BicontactModel(
        alpha_plus=FormField.of(1, 0.0, up, down),
        alpha_minus=FormField.of(1, 0.0, up, -down),
        reeb_plus=vector_field(0.0, 0.5 * down, 0.5 * up),
    )


def fiber_reeb_minus(lam: float) -> VectorField3:
    L = math.log(lam)
    up = ScalarField3.along(0, ExpCurve(L))
    down = ScalarField3.along(0, ExpCurve(-L))
    return vector_field(0.0, 0.5 * down, -0.5 * up)


def positive_model(params: FillingParams, profile: BumpProfile) -> BicontactModel:
    L = params.log_lam
    x, y = ScalarField3.coordinate(0), ScalarField3.coordinate(1)
    rho, eta, h = profile.rho_field(), profile.eta_field(), profile.h_field()
    drho = rho.gradient[0]
    deta = eta.gradient[1]
    d2eta = deta.gradient[1]
    stretch = 1.0 + h * d2eta
    return BicontactModel(
        alpha_plus=FormField.of(1, h.gradient[0] * deta, stretch, -L * x),
        alpha_minus=FormField.of(1, 1.0 - L * drho * eta, 0.0, -L * y),
        reeb_plus=vector_field(0.0, 1.0 / stretch, 0.0),
    )


def negative_model(params: FillingParams, profile: BumpProfile) -> BicontactModel:
    L = params.log_lam
    x, y = ScalarField3.coordinate(0), ScalarField3.coordinate(1)
    rho, eta = profile.rho_field(), profile.eta_field()
    drho = rho.gradient[1]
    deta = eta.gradient[0]
    denominator = 1.0 + L * drho * (x * deta - eta)
    return BicontactModel(
        alpha_plus=FormField.of(1, 0.0, 1.0 - L * eta * drho, -L * x),
        alpha_minus=FormField.of(1, 1.0, -L * deta * drho * y, -L * y),
        reeb_plus=vector_field(0.0, 1.0 / denominator, -deta * drho / denominator),
    )


def filling_model(params: FillingParams, profile: BumpProfile) -> BicontactModel:
    if profile.sign_case != params.sign_case or profile.q != params.q:
        raise InvalidInputError(
            f"profile ({profile.sign_case}, q={profile.q}) does not fit params "
            f"({params.sign_case}, q={params.q})"
        )
    return positive_model(params, profile) if params.positive else negative_model(params, profile)
