"""Tests for sampled forms, the exterior derivative and the wedge product."""

import math

import numpy as np
import pytest

from bicontact.forms import (
    DegreeOverflow,
    ExpCurve,
    FormField,
    ScalarField3,
    ext_d,
    interior,
    richardson_order,
    sample_grid,
    vector_field,
    wedge,
)
from core.errors import InvalidInputError

L = math.log((3 + math.sqrt(5)) / 2)
X, Y, Z = (ScalarField3.coordinate(i) for i in range(3))


@pytest.fixture(scope="module")
def grid17():
    return sample_grid([(-1.0, 1.0)] * 3, 17)


def _max_abs(form: FormField, grid) -> float:
    return float(np.abs(form.evaluate(*grid)).max())


def test_d_of_the_contact_form(grid17) -> None:
    alpha = FormField.of(1, 0.0, 1.0, -L * X)
    d_alpha = ext_d(alpha)
    assert d_alpha.degree == 2
    assert np.allclose(d_alpha.component("dzdx")(*grid17), L, atol=1e-15)
    assert _max_abs(FormField.of(2, d_alpha.coefficients[0], 0.0, d_alpha.coefficients[2]), grid17) == 0.0


def test_d_of_a_constant_top_form(grid17) -> None:
    assert _max_abs(ext_d(FormField.of(3, 7.0)), grid17) == 0.0


@pytest.mark.parametrize("step", [None, 1e-3])
def test_d_squared_vanishes(grid17, step) -> None:
    alpha = FormField.of(
        1,
        X * Y + 0.5 * Z * Z * X,
        Y * Y * Z - 0.25 * X * X * X,
        X * Y * Z + 0.3 * Y,
    )
    assert _max_abs(ext_d(ext_d(alpha, step), step), grid17) < 1e-8


def test_d_of_a_function_is_its_gradient(grid17) -> None:
    f = X * X * Y + Z
    df = ext_d(FormField(0, (f,)))
    x, y, z = grid17
    assert np.allclose(df.evaluate(*grid17), np.stack([2 * x * y, x * x, np.ones_like(z)]), atol=1e-14)


def test_quotient_rule_matches_differences(grid17) -> None:
    f = 1.0 / (1.0 + X * X + 0.5 * Y * Y)
    exact = f.partial(0)(*grid17)
    approx = f.partial(0, 1e-4)(*grid17)
    assert np.allclose(exact, approx, atol=1e-7)


def test_wedge_of_basis_one_forms(grid17) -> None:
    dx, dy = FormField.of(1, 1.0, 0.0, 0.0), FormField.of(1, 0.0, 1.0, 0.0)
    area = wedge(dx, dy)
    assert area.degree == 2
    assert np.array_equal(area.evaluate(*grid17)[:, 0, 0, 0], [0.0, 0.0, 1.0])
    assert np.array_equal(wedge(dy, dx).evaluate(*grid17)[:, 0, 0, 0], [0.0, 0.0, -1.0])


def test_one_form_wedged_with_itself_vanishes(grid17) -> None:
    a = FormField.of(1, X, Y * Z, 2.0)
    assert _max_abs(wedge(a, a), grid17) == 0.0


def test_wedge_of_a_one_and_a_two_form_commutes(grid17) -> None:
    a = FormField.of(1, X, Y, 1.0)
    b = FormField.of(2, Z, 2.0, X * Y)
    assert np.array_equal(wedge(a, b).evaluate(*grid17), wedge(b, a).evaluate(*grid17))


def test_degree_overflow() -> None:
    two = FormField.zero(2)
    with pytest.raises(DegreeOverflow):
        wedge(two, two)
    with pytest.raises(DegreeOverflow):
        FormField.of(4, 1.0)


def test_component_count_is_checked() -> None:
    with pytest.raises(InvalidInputError):
        FormField.of(1, 1.0, 2.0)


def test_interior_of_an_area_form(grid17) -> None:
    area = FormField.of(2, 0.0, 0.0, 1.0)  # dx^dy
    contracted = interior(area, vector_field(0.0, 1.0, 0.0))
    assert np.array_equal(contracted.evaluate(*grid17)[:, 0, 0, 0], [-1.0, 0.0, 0.0])


def test_richardson_order_of_central_differences() -> None:
    grid = sample_grid([(-0.5, 0.5)] * 3, 9)
    alpha = FormField.of(
        1,
        ScalarField3.along(1, ExpCurve(1.3)),
        ScalarField3.along(2, ExpCurve(-0.7)) * X,
        ScalarField3.along(0, ExpCurve(0.9)) * Y,
    )
    assert richardson_order(alpha, grid) >= 1.9


def test_richardson_order_of_a_quadratic_form_is_exact() -> None:
    grid = sample_grid([(-0.5, 0.5)] * 3, 5)
    assert richardson_order(FormField.of(1, X * Y, Z * Z, 1.0), grid) == float("inf")


def test_richardson_order_needs_partials() -> None:
    raw = ScalarField3(lambda x, y, z: np.sin(x))
    with pytest.raises(InvalidInputError):
        richardson_order(FormField.of(1, raw, 0.0, 0.0), sample_grid([(-1.0, 1.0)] * 3, 3))
