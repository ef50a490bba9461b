"""Tests for shell charts around a drilled orbit."""

import math

import numpy as np
import pytest

from bicontact.profiles import FillingParams, default_profile
from bicontact.shell import quadrant, shell_transition
from core.errors import InvalidInputError

PHI2 = (3 + math.sqrt(5)) / 2


@pytest.fixture(scope="module")
def positive_chart():
    return shell_transition(FillingParams.for_slope(3, 2, PHI2), "positive")


@pytest.fixture(scope="module")
def negative_chart():
    return shell_transition(FillingParams.for_slope(2, -1, PHI2), "negative")


def test_quadrants() -> None:
    x = np.array([0.9, 0.0, -0.9, 0.0])
    y = np.array([0.0, 0.9, 0.0, -0.9])
    assert quadrant(x, y).tolist() == [0, 1, 2, 3]


def test_z_period_is_p(positive_chart, negative_chart) -> None:
    assert positive_chart.z_period == 3.0
    assert negative_chart.z_period == 2.0


def test_forms_reduce_where_rho_is_flat(positive_chart) -> None:
    L = math.log(PHI2)
    x, y, z = np.array([-0.8, -0.6]), np.array([0.3, -0.9]), np.array([0.0, 1.0])
    plus, minus = positive_chart.forms()
    assert np.allclose(plus.evaluate(x, y, z), np.stack([np.zeros(2), np.ones(2), -L * x]), atol=0)
    assert np.allclose(minus.evaluate(x, y, z), np.stack([np.ones(2), np.zeros(2), -L * y]), atol=0)


@pytest.mark.parametrize("chart_name", ["positive_chart", "negative_chart"])
def test_quadrant_charts_agree_with_the_shell_forms(request, chart_name) -> None:
    assert request.getfixturevalue(chart_name).overlap_deviation(16) <= 1e-12


def test_positive_transitions(positive_chart) -> None:
    assert positive_chart.transition(0, 1) == pytest.approx(2.0)
    assert positive_chart.transition(1, 0) == pytest.approx(-2.0)
    assert positive_chart.transition(1, 2) == 0.0
    assert positive_chart.transition(2, 3) == 0.0
    assert positive_chart.transition(3, 0) == 0.0


def test_negative_transitions(negative_chart) -> None:
    assert negative_chart.transition(0, 1) == pytest.approx(-1.0)
    assert negative_chart.transition(3, 0) == 0.0
    with pytest.raises(InvalidInputError):
        negative_chart.transition(0, 2)


def test_to_chart_shifts_only_the_recharted_quadrant(positive_chart) -> None:
    t = np.array([0.5, 0.5])
    x, y = np.array([0.0, 0.75]), np.array([0.75, 0.0])
    _, _, z = positive_chart.to_chart(t, x, y)
    # rho(0) = -q/2 on Q1; Q0 is untouched
    assert z.tolist() == pytest.approx([1.5, 0.5])


def test_side_must_fit_the_profile() -> None:
    params = FillingParams.for_slope(1, 1, PHI2)
    with pytest.raises(InvalidInputError):
        shell_transition(params, "negative", default_profile(params))
    with pytest.raises(InvalidInputError):
        shell_transition(params, "sideways")
