"""Bump profiles for the solid-torus filling models.

Every profile is piecewise polynomial in one chart variable ``v``: constant
or linear outside ``(-eps/2, eps/2)`` and a polynomial in
``t = (v + eps/2) / eps`` inside, built on the quintic smoothstep
``S(t) = 10t^3 - 15t^4 + 6t^5``.

* ``eta = eps * I(t)`` with ``I`` the antiderivative of ``S`` vanishing at 0;
  so ``eta = 0`` below ``-eps/2`` and ``eta = v`` above ``eps/2``.
* ``rho = -q S(t)`` (positive model) or ``q S(t)`` (negative model).
* ``h(x) = integral from -eps of -(log lam) u rho'(u) du`` (positive model).
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.polynomial import Polynomial

from bicontact.config import EPSILON, PROFILE_SAMPLES, PROFILE_SLACK
from bicontact.forms import ScalarField3
from core.errors import InvalidInputError

logger = logging.getLogger(__name__)

SignCase = Literal["positive_slope", "negative_slope"]
POSITIVE_SLOPE: SignCase = "positive_slope"
NEGATIVE_SLOPE: SignCase = "negative_slope"

SMOOTHSTEP = Polynomial([0.0, 0.0, 0.0, 10.0, -15.0, 6.0])
_ZERO = Polynomial([0.0])
_IDENTITY = Polynomial([0.0, 1.0])


class ProfileInvalid(InvalidInputError):
    """Raised when sampling finds a profile violating its sign conditions."""


@dataclass(frozen=True)
class PiecewisePoly:
    """Three polynomial pieces split at ``lo`` and ``hi``.

    The outer pieces own their breakpoints, so values on and beyond them are
    exact.
    """

    lo: float
    hi: float
    left: Polynomial
    middle: Polynomial
    right: Polynomial

    def __call__(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.float64)
        return np.piecewise(v, [v <= self.lo, v >= self.hi], [self.left, self.right, self.middle])

    def deriv(self) -> "PiecewisePoly":
        return PiecewisePoly(self.lo, self.hi, self.left.deriv(), self.middle.deriv(), self.right.deriv())

    def seam_gaps(self, order: int = 2) -> float:
        """Largest jump of the value or its first ``order`` derivatives at the seams."""
        gap, f = 0.0, self
        for _ in range(order + 1):
            gap = max(gap, abs(f.middle(f.lo) - f.left(f.lo)), abs(f.middle(f.hi) - f.right(f.hi)))
            f = f.deriv()
        return float(gap)


@dataclass(frozen=True)
class FillingParams:
    """Boundary slope ``p/q`` of a drilled orbit and the stretch factor."""

    p: int
    q: int
    lam: float
    sign_case: SignCase

    def __post_init__(self) -> None:
        if self.p < 1:
            raise InvalidInputError(f"p must be a positive integer, got {self.p}")
        if self.q == 0:
            raise InvalidInputError("q must be nonzero")
        if not self.lam > 1.0:
            raise InvalidInputError(f"lam must exceed 1, got {self.lam}")
        expected = POSITIVE_SLOPE if self.q > 0 else NEGATIVE_SLOPE
        if self.sign_case != expected:
            raise InvalidInputError(f"sign_case {self.sign_case} does not match slope {self.p}/{self.q}")

    @classmethod
    def for_slope(cls, p: int, q: int, lam: float) -> "FillingParams":
        return cls(p, q, lam, POSITIVE_SLOPE if q > 0 else NEGATIVE_SLOPE)

    @property
    def log_lam(self) -> float:
        return float(np.log(self.lam))

    @property
    def positive(self) -> bool:
        return self.sign_case == POSITIVE_SLOPE

    def to_dict(self) -> dict[str, object]:
        return {"p": self.p, "q": self.q, "lam": self.lam, "sign_case": self.sign_case}


@dataclass(frozen=True)
class BumpProfile:
    """The functions ``rho``, ``eta`` and ``h`` of one filling model.

    Positive model: ``rho`` and ``h`` depend on ``x``, ``eta`` on ``y``.
    Negative model: ``rho`` depends on ``y``, ``eta`` on ``x``; ``h`` is zero.
    """

    eps: float
    q: int
    sign_case: SignCase
    log_lam: float
    rho: PiecewisePoly
    eta: PiecewisePoly
    h: PiecewisePoly

    @property
    def positive(self) -> bool:
        return self.sign_case == POSITIVE_SLOPE

    @property
    def rho_target(self) -> float:
        return float(-self.q if self.positive else self.q)

    @property
    def rho_axis(self) -> int:
        return 0 if self.positive else 1

    @property
    def eta_axis(self) -> int:
        return 1 if self.positive else 0

    def rho_field(self) -> ScalarField3:
        return ScalarField3.along(self.rho_axis, self.rho, "rho")

    def eta_field(self) -> ScalarField3:
        return ScalarField3.along(self.eta_axis, self.eta, "eta")

    def h_field(self) -> ScalarField3:
        return ScalarField3.along(0, self.h, "h")


def _in_t(eps: float) -> Polynomial:
    """``t = (v + eps/2) / eps`` as a polynomial in ``v``."""
    return Polynomial([0.5, 1.0 / eps])


def default_profile(params: FillingParams, eps: float = EPSILON) -> BumpProfile:
    """Quintic-smoothstep profile for ``params``."""
    if not eps > 0:
        raise InvalidInputError(f"eps must be positive, got {eps}")
    lo, hi = -eps / 2, eps / 2
    t = _in_t(eps)
    step = SMOOTHSTEP(t)
    eta = PiecewisePoly(lo, hi, _ZERO, eps * SMOOTHSTEP.integ()(t), _IDENTITY)
    if params.positive:
        rho = PiecewisePoly(lo, hi, _ZERO, -params.q * step, Polynomial([float(-params.q)]))
        h_mid = (Polynomial([0.0, -params.log_lam]) * rho.middle.deriv()).integ(lbnd=lo)
        h = PiecewisePoly(lo, hi, _ZERO, h_mid, _ZERO)
    else:
        rho = PiecewisePoly(lo, hi, _ZERO, params.q * step, Polynomial([float(params.q)]))
        h = PiecewisePoly(lo, hi, _ZERO, _ZERO, _ZERO)
    return BumpProfile(eps, params.q, params.sign_case, params.log_lam, rho, eta, h)


def validate_profile(profile: BumpProfile, samples: int = PROFILE_SAMPLES) -> dict[str, float]:
    """Sample the sign conditions of ``profile`` on ``[-eps, eps]``.

    Returns the sampled margins. Raises ``ProfileInvalid`` listing every
    condition that failed.
    """
    eps, L = profile.eps, profile.log_lam
    v = np.linspace(-eps, eps, samples)
    rho, drho = profile.rho(v), profile.rho.deriv()(v)
    eta, deta, d2eta = profile.eta(v), profile.eta.deriv()(v), profile.eta.deriv().deriv()(v)
    scale = max(1.0, abs(profile.q), L) / min(1.0, eps)
    slack = PROFILE_SLACK * scale
    below, above = v <= -eps / 2, v >= eps / 2

    margins: dict[str, float] = {
        "rho_max_slope": float(drho.max()),
        "rho_support": float(max(np.abs(rho[below]).max(), np.abs(rho[above] - profile.rho_target).max())),
        "eta_min": float(eta.min()),
        "eta_min_slope": float(deta.min()),
        "eta_min_convexity": float(d2eta.min()),
        "eta_min_tangent_gap": float((eta - deta * v).min()),
        "eta_support": float(max(np.abs(eta[below]).max(), np.abs(eta[above] - v[above]).max())),
        "seam_gap": max(profile.rho.seam_gaps(), profile.eta.seam_gaps(), profile.h.seam_gaps(1)),
    }
    failures = [
        name
        for name, bad in (
            ("rho is not decreasing", margins["rho_max_slope"] > slack),
            ("rho misses its end values", margins["rho_support"] > slack),
            ("eta is negative", margins["eta_min"] < -slack),
            ("eta is not increasing", margins["eta_min_slope"] < -slack),
            ("eta is not convex", margins["eta_min_convexity"] < -slack),
            ("eta - eta' v is negative", margins["eta_min_tangent_gap"] < -slack),
            ("eta misses its end values", margins["eta_support"] > slack),
            ("pieces do not join smoothly", margins["seam_gap"] > slack),
        )
        if bad
    ]

    if profile.positive:
        h, dh = profile.h(v), profile.h.deriv()(v)
        margins["rho_even"] = float(np.abs(drho - drho[::-1]).max())
        margins["h_slope_gap"] = float(np.abs(dh + L * v * drho).max())
        margins["h_support"] = float(np.abs(h[below | above]).max())
        margins["contact_factor"] = float((1.0 + np.outer(h, d2eta)).min())
        if margins["rho_even"] > slack:
            failures.append("rho' is not even")
        if margins["h_slope_gap"] > slack:
            failures.append("h' differs from -(log lam) x rho'")
        if margins["h_support"] > slack:
            failures.append("h is not supported in (-eps/2, eps/2)")
    else:
        # rows follow y through rho', columns follow x through eta
        margins["contact_factor"] = float((1.0 + L * np.outer(drho, deta * v - eta)).min())
    if not margins["contact_factor"] > 0:
        failures.append(f"contact factor {margins['contact_factor']:.3g} is not positive")

    if failures:
        raise ProfileInvalid(f"profile for q={profile.q}, eps={eps}: " + "; ".join(failures))
    logger.debug("profile q=%s eps=%s: contact factor %.6f", profile.q, eps, margins["contact_factor"])
    return margins


def profile_hash(profile: BumpProfile, samples: int = PROFILE_SAMPLES) -> str:
    """SHA-256 digest of the sampled profile values."""
    v = np.linspace(-profile.eps, profile.eps, samples)
    digest = hashlib.sha256(f"{profile.sign_case}|{profile.q}|{profile.eps!r}\n".encode("utf-8"))
    for f in (profile.rho, profile.eta, profile.h):
        digest.update(np.ascontiguousarray(f(v), dtype="<f8").tobytes())
    return digest.hexdigest()
