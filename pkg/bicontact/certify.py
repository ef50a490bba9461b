"""Grid certifiers for the fiber forms and the filling models.

A certificate is a list of margins, each a sampled extreme compared with a
bound. Sampling is a check, not a proof; the margins are recorded so a run
can be repeated on a finer grid.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Literal, Optional

import numpy as np

from bicontact.config import FIBER_TOL, GRID, REEB_TOL, SAMPLING_NOTE, SHELL_TOL, TOLERANCE
from bicontact.forms import FormField, Grid, ext_d, extreme, interior, sample_grid, wedge
from bicontact.models import BicontactModel, fiber_model, fiber_reeb_minus, filling_model
from bicontact.profiles import BumpProfile, FillingParams, default_profile, profile_hash, validate_profile
from bicontact.shell import shell_transition
from core.errors import InvalidInputError

logger = logging.getLogger(__name__)

Relation = Literal[">", "<", "<="]


@dataclass(frozen=True)
class Margin:
    name: str
    value: float
    bound: float
    relation: Relation

    @property
    def passed(self) -> bool:
        if math.isnan(self.value):
            return False
        if self.relation == ">":
            return self.value > self.bound
        if self.relation == "<":
            return self.value < self.bound
        return self.value <= self.bound

    @property
    def slack(self) -> float:
        """Signed distance to the bound; negative when the margin fails."""
        if math.isnan(self.value):
            return -math.inf
        return self.value - self.bound if self.relation == ">" else self.bound - self.value

    def to_dict(self) -> dict[str, Any]:
        return {"value": self.value, "bound": self.bound, "relation": self.relation, "passed": self.passed}


@dataclass
class Certificate:
    name: str
    grid: int
    params: dict[str, Any]
    margins: list[Margin] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)
    profile_hash: Optional[str] = None

    @property
    def passed(self) -> bool:
        return all(m.passed for m in self.margins)

    def margin(self, name: str) -> Margin:
        for m in self.margins:
            if m.name == name:
                return m
        raise KeyError(name)

    def failed(self) -> list[str]:
        return [m.name for m in self.margins if not m.passed]

    def worst(self) -> Optional[Margin]:
        return min(self.margins, key=lambda m: m.slack, default=None)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "grid": self.grid,
            "params": self.params,
            "margins": {m.name: m.to_dict() for m in self.margins},
            "details": self.details,
            "profile_hash": self.profile_hash,
            "note": SAMPLING_NOTE,
        }


def _component(form: FormField, k: int = 0) -> Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]:
    return form.coefficients[k]


def _abs_max(form: FormField) -> Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]:
    return lambda x, y, z: np.abs(form.evaluate(x, y, z)).max(axis=0)


def _reeb_margins(model: BicontactModel, grid: Grid, tol: float) -> tuple[Margin, Margin, Margin]:
    """Normalization, kernel and strong-adaptedness margins of ``R_+``."""
    normal = interior(model.alpha_plus, model.reeb_plus) - FormField.of(0, 1.0)
    kernel = interior(ext_d(model.alpha_plus), model.reeb_plus)
    adapted = interior(model.alpha_minus, model.reeb_plus)
    return (
        Margin("reeb_normalization", extreme(_abs_max(normal), grid, "max"), tol, "<="),
        Margin("reeb_kernel", extreme(_abs_max(kernel), grid, "max"), tol, "<="),
        Margin("strong_adaptedness", extreme(_abs_max(adapted), grid, "max"), tol, "<="),
    )


def certify_fiber_forms(lam: float, grid: int = GRID) -> Certificate:
    """Check the fiber forms on a ``(t, s, u)`` grid over ``[-1, 1]^3``."""
    model = fiber_model(lam)
    points = sample_grid([(-1.0, 1.0)] * 3, grid)
    plus3 = wedge(model.alpha_plus, ext_d(model.alpha_plus))
    minus3 = wedge(model.alpha_minus, ext_d(model.alpha_minus))
    flow = FormField.of(1, model.alpha_plus.coefficients[0], model.alpha_minus.coefficients[0], 0.0)

    cert = Certificate("fiber_forms", grid, {"lam": lam})
    cert.margins.append(Margin("plus_contact", extreme(_component(plus3), points, "min"), 0.0, ">"))
    cert.margins.append(Margin("minus_contact", extreme(_component(minus3), points, "max"), 0.0, "<"))
    cert.margins.extend(_reeb_margins(model, points, FIBER_TOL))
    cert.margins.append(Margin("flow_in_both_kernels", extreme(_abs_max(flow), points, "max"), 0.0, "<="))

    bi_adapted = interior(model.alpha_plus, fiber_reeb_minus(lam))
    cert.details["strongly_bi_adapted"] = extreme(_abs_max(bi_adapted), points, "max")
    logger.info("fiber forms lam=%.6f grid=%d: %s", lam, grid, "ok" if cert.passed else cert.failed())
    return cert


def certify_filling(
    params: FillingParams,
    profile: Optional[BumpProfile] = None,
    grid: int = GRID,
    tol: float = TOLERANCE,
) -> Certificate:
    """Sample the filling model of ``params`` over its solid-torus chart.

    Margins: ``plus_contact``, ``minus_contact``, ``transversality``,
    ``strong_adaptedness`` and ``shell_matching``. The Reeb normalization
    and kernel margins are recorded next to them.

    Raises:
        ProfileInvalid: when the profile fails its sampled sign conditions.
    """
    if not tol > 0:
        raise InvalidInputError(f"tolerance must be positive, got {tol}")
    profile = profile or default_profile(params)
    profile_margins = validate_profile(profile)
    model = filling_model(params, profile)
    eps, L = profile.eps, params.log_lam
    points = sample_grid([(-eps, eps), (-eps, eps), (0.0, float(params.p))], grid, periodic_last=True)

    plus3 = wedge(model.alpha_plus, ext_d(model.alpha_plus))
    minus3 = wedge(model.alpha_minus, ext_d(model.alpha_minus))
    mixed = wedge(model.alpha_minus, model.alpha_plus)
    transverse = mixed.component("dxdy")

    chart = shell_transition(params, "positive" if params.positive else "negative", profile)
    shell_plus, shell_minus = chart.forms()

    def shell_gap(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
        return np.maximum(
            _abs_max(model.alpha_plus - shell_plus)(x, y, z),
            _abs_max(model.alpha_minus - shell_minus)(x, y, z),
        )

    normal, kernel, adapted = _reeb_margins(model, points, REEB_TOL)
    cert = Certificate("filling", grid, {**params.to_dict(), "eps": eps, "tolerance": tol})
    cert.profile_hash = profile_hash(profile)
    cert.margins.extend(
        [
            Margin("plus_contact", extreme(_component(plus3), points, "min"), tol * L, ">"),
            Margin("minus_contact", extreme(_component(minus3), points, "max"), -tol, "<"),
            Margin(
                "transversality",
                extreme(lambda x, y, z: np.abs(transverse(x, y, z)), points, "min"),
                tol,
                ">",
            ),
            adapted,
            Margin(
                "shell_matching",
                extreme(shell_gap, points, "max", lambda x, y, z: chart.in_shell(x, y)),
                SHELL_TOL,
                "<=",
            ),
            normal,
            kernel,
        ]
    )
    cert.details["profile"] = profile_margins
    cert.details["shell_overlap"] = chart.overlap_deviation(max(8, grid // 4))
    cert.details["z_period"] = chart.z_period
    logger.info(
        "filling p=%d q=%d lam=%.6f grid=%d: %s",
        params.p,
        params.q,
        params.lam,
        grid,
        "ok" if cert.passed else f"failed {cert.failed()}",
    )
    return cert


def certify_sweep(
    lams: list[float],
    slopes: list[tuple[int, int]],
    grid: int = GRID,
    tol: float = TOLERANCE,
) -> list[Certificate]:
    """Fiber certificates per ``lam`` and filling certificates per slope."""
    out: list[Certificate] = []
    for lam in lams:
        out.append(certify_fiber_forms(lam, grid))
        for p, q in slopes:
            out.append(certify_filling(FillingParams.for_slope(p, q, lam), grid=grid, tol=tol))
    return out
