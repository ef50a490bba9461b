"""Shell charts around a drilled orbit.

Near the orbit the fiber forms read ``alpha_+ = dy - (log lam) x dt`` and
``alpha_- = dx - (log lam) y dt`` on each of the four quadrants

* ``Q0: x >= |y|``, ``Q1: y >= |x|``, ``Q2: x <= -|y|``, ``Q3: y <= -|x|``.

One quadrant (``Q1`` on the positive side, ``Q0`` on the negative side) is
recharted by ``z = t - rho``; the others keep ``z = t``. Adjacent charts then
differ by a constant z-translation: ``0`` or the end value of ``rho``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Literal

import numpy as np

from bicontact.forms import FormField, Grid, ScalarField3, ext_d, extreme, sample_grid
from bicontact.profiles import BumpProfile, FillingParams, default_profile
from core.errors import InvalidInputError

logger = logging.getLogger(__name__)

Side = Literal["positive", "negative"]


def quadrant(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    ax, ay = np.abs(x), np.abs(y)
    return np.select([x >= ay, y >= ax, x <= -ay], [0, 1, 2], 3)


@dataclass(frozen=True)
class ShellChart:
    params: FillingParams
    profile: BumpProfile
    side: Side

    @property
    def z_period(self) -> float:
        return float(self.params.p)

    @property
    def recharted(self) -> int:
        """Index of the quadrant carrying the ``rho`` shift."""
        return 1 if self.side == "positive" else 0

    def in_shell(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        r = np.maximum(np.abs(x), np.abs(y))
        return (r >= self.profile.eps / 2) & (r <= self.profile.eps)

    def shift(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        x, y = np.broadcast_arrays(np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64))
        rho = self.profile.rho(x if self.side == "positive" else y)
        return np.where(quadrant(x, y) == self.recharted, rho, 0.0)

    def to_chart(self, t: np.ndarray, x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Map flow coordinates on a shell quadrant to ``(x, y, z)``."""
        return np.asarray(x), np.asarray(y), np.mod(np.asarray(t) - self.shift(x, y), self.z_period)

    def transition(self, i: int, j: int) -> float:
        """z-translation taking the chart of ``Q_i`` to that of adjacent ``Q_j``."""
        if (i - j) % 4 not in (1, 3):
            raise InvalidInputError(f"quadrants {i} and {j} are not adjacent")
        # the shared boundary ray of Q_i and Q_j, sampled at radius 3 eps / 4
        angle = {frozenset({0, 1}): 1, frozenset({1, 2}): 3, frozenset({2, 3}): 5, frozenset({3, 0}): 7}
        theta = angle[frozenset({i % 4, j % 4})] * np.pi / 4
        r = 0.75 * self.profile.eps
        x, y = r * np.cos(theta), r * np.sin(theta)
        rho = float(self.profile.rho(np.array([x if self.side == "positive" else y]))[0])
        shift = {i: 0.0, j: 0.0}
        if self.recharted in shift:
            shift[self.recharted] = rho
        return shift[i] - shift[j]

    # -- forms ---------------------------------------------------------------

    def forms(self) -> tuple[FormField, FormField]:
        """The shell forms ``(alpha_+, alpha_-)`` in the uniform chart."""
        L = self.params.log_lam
        x, y = ScalarField3.coordinate(0), ScalarField3.coordinate(1)
        rho, eta = self.profile.rho_field(), self.profile.eta_field()
        if self.side == "positive":
            drho, deta = rho.gradient[0], eta.gradient[1]
            plus = FormField.of(1, -L * x * drho * deta, 1.0, -L * x)
            minus = FormField.of(1, 1.0 - L * drho * eta, 0.0, -L * y)
        else:
            drho, deta = rho.gradient[1], eta.gradient[0]
            plus = FormField.of(1, 0.0, 1.0 - L * eta * drho, -L * x)
            minus = FormField.of(1, 1.0, -L * deta * drho * y, -L * y)
        return plus, minus

    def pulled_back(self, j: int) -> tuple[FormField, FormField]:
        """The fiber forms written in the chart of ``Q_j``: ``t = z + shift_j``."""
        L = self.params.log_lam
        x, y = ScalarField3.coordinate(0), ScalarField3.coordinate(1)
        if j == self.recharted:
            shift = self.profile.rho_field()
        else:
            shift = ScalarField3.constant(0.0)
        sx, sy, _ = ext_d(FormField(0, (shift,))).coefficients
        plus = FormField.of(1, -L * x * sx, 1.0 - L * x * sy, -L * x)
        minus = FormField.of(1, 1.0 - L * y * sx, -L * y * sy, -L * y)
        return plus, minus

    def overlap_deviation(self, grid: int) -> float:
        """Largest gap between the per-quadrant and the uniform shell forms."""
        eps = self.profile.eps
        points: Grid = sample_grid([(-eps, eps), (-eps, eps), (0.0, self.z_period)], grid, periodic_last=True)
        plus, minus = self.forms()
        worst = 0.0
        for j in range(4):
            here_plus, here_minus = self.pulled_back(j)

            def gap(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
                a = np.abs((here_plus - plus).evaluate(x, y, z)).max(axis=0)
                b = np.abs((here_minus - minus).evaluate(x, y, z)).max(axis=0)
                return np.maximum(a, b)

            def on_quadrant(x: np.ndarray, y: np.ndarray, z: np.ndarray, j: int = j) -> np.ndarray:
                return self.in_shell(x, y) & (quadrant(x, y) == j)

            found = extreme(gap, points, "max", on_quadrant)
            if not np.isnan(found):
                worst = max(worst, found)
        return worst


def shell_transition(
    params: FillingParams,
    side: Side,
    profile: BumpProfile | None = None,
) -> ShellChart:
    """Shell chart for ``params`` on ``side`` with its z-period ``p``."""
    if side not in ("positive", "negative"):
        raise InvalidInputError(f"side must be positive or negative, got {side!r}")
    if profile is None:
        profile = default_profile(params)
    expected = "positive" if profile.positive else "negative"
    if side != expected:
        raise InvalidInputError(f"a {profile.sign_case} profile fits the {expected} side, not {side}")
    return ShellChart(params, profile, side)
