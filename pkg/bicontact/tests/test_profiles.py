"""Tests for the smoothstep bump profiles and filling parameters."""

import math

import numpy as np
import pytest
from numpy.polynomial import Polynomial

from bicontact.profiles import (
    NEGATIVE_SLOPE,
    POSITIVE_SLOPE,
    FillingParams,
    ProfileInvalid,
    default_profile,
    profile_hash,
    validate_profile,
)
from core.errors import InvalidInputError

PHI2 = (3 + math.sqrt(5)) / 2
V = np.linspace(-1.0, 1.0, 401)


def test_params_pick_the_sign_case() -> None:
    assert FillingParams.for_slope(2, 3, PHI2).sign_case == POSITIVE_SLOPE
    assert FillingParams.for_slope(2, -3, PHI2).sign_case == NEGATIVE_SLOPE


@pytest.mark.parametrize(
    "p, q, lam, case",
    [
        (0, 1, PHI2, POSITIVE_SLOPE),
        (1, 0, PHI2, POSITIVE_SLOPE),
        (1, 1, 1.0, POSITIVE_SLOPE),
        (1, -1, PHI2, POSITIVE_SLOPE),
    ],
)
def test_params_are_validated(p, q, lam, case) -> None:
    with pytest.raises(InvalidInputError):
        FillingParams(p, q, lam, case)


def test_eta_ends() -> None:
    profile = default_profile(FillingParams.for_slope(1, 1, PHI2))
    assert profile.eta(np.array([-1.0, -0.5, 0.5, 0.75])).tolist() == [0.0, 0.0, 0.5, 0.75]
    assert profile.eta(np.array([0.0]))[0] == pytest.approx(5 / 64, abs=1e-12)
    assert np.all(profile.eta.deriv().deriv()(V) >= -1e-12)


def test_positive_rho_and_h() -> None:
    params = FillingParams.for_slope(1, 2, PHI2)
    profile = default_profile(params)
    assert profile.rho(np.array([-0.75, 0.75])).tolist() == [0.0, -2.0]
    drho = profile.rho.deriv()(V)
    assert np.all(drho <= 1e-12)
    assert np.allclose(drho, drho[::-1], atol=1e-12)

    t = (V + 0.5) / 1.0
    closed = np.where(np.abs(V) < 0.5, params.log_lam * 2 * Polynomial([0, 0, 0, -5, 15, -15, 5])(t), 0.0)
    assert np.allclose(profile.h(V), closed, atol=1e-12)
    assert np.all(profile.h(V) <= 1e-12)


def test_negative_rho_is_decreasing_to_q() -> None:
    profile = default_profile(FillingParams.for_slope(1, -3, PHI2))
    assert profile.rho(np.array([-0.75, 0.75])).tolist() == [0.0, -3.0]
    assert np.all(profile.rho.deriv()(V) <= 1e-12)
    assert not np.any(profile.h(V))


@pytest.mark.parametrize("q", [1, 2, 3, -1, -2, -3])
@pytest.mark.parametrize("lam", [PHI2, 5.0])
def test_default_profiles_validate(q, lam) -> None:
    margins = validate_profile(default_profile(FillingParams.for_slope(1, q, lam)))
    assert margins["contact_factor"] > 0
    assert margins["eta_min_tangent_gap"] >= -1e-12


def test_steep_profile_is_rejected() -> None:
    with pytest.raises(ProfileInvalid, match="contact factor"):
        validate_profile(default_profile(FillingParams.for_slope(1, 3, math.exp(4))))


def test_small_eps_is_accepted() -> None:
    profile = default_profile(FillingParams.for_slope(1, 1, PHI2), eps=0.25)
    assert profile.eta(np.array([0.2]))[0] == 0.2
    validate_profile(profile)


def test_profile_hash_is_stable() -> None:
    a = default_profile(FillingParams.for_slope(1, 2, PHI2))
    b = default_profile(FillingParams.for_slope(3, 2, PHI2))
    c = default_profile(FillingParams.for_slope(1, 3, PHI2))
    assert profile_hash(a) == profile_hash(b)
    assert profile_hash(a) != profile_hash(c)
    assert len(profile_hash(a)) == 64
