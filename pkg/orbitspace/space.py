"""Orbit space of a hyperbolic torus-bundle suspension flow.

Lattice coordinates ``x = (x1, x2)`` live on the universal cover of the torus
fiber. Eigen-coordinates ``(s, u)`` are the linear functionals

    s(x) = x1 + beta * x2      with s(A x) = mu * s(x)
    u(x) = x1 + beta' * x2     with u(A x) = u(x) / mu

where ``mu`` is the eigenvalue of ``A`` with ``|mu| = lambda > 1``. Stable
leaves are the vertical lines ``{s = const}`` and unstable leaves the
horizontal lines ``{u = const}``. Slopes are ``du/ds`` throughout.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterable, Optional, Protocol, Sequence, TypeVar, Union

from core.errors import InvalidInputError, InvariantBreach
from exactfield.quadnum import QuadNum, qn_from_json, qn_to_float, sqrt_free_part
from orbitspace.monodromy import (
    BadDrilledPoint,
    DrillSpec,
    IntMatrix,
    LatticePoint,
    MonodromySpec,
    NotHyperbolic,
    mat_apply,
    mat_pow,
    monodromy_matrix,
)

logger = logging.getLogger(__name__)

Point = tuple[QuadNum, QuadNum]
Scalar = Union[int, Fraction, QuadNum]


class NotLatticeRational(InvalidInputError):
    """Raised when a point expected to be lattice-rational is not."""


def _frac_part(x: Fraction) -> Fraction:
    return x - math.floor(x)


def _order(x1: Fraction, x2: Fraction) -> int:
    return math.lcm(x1.denominator, x2.denominator)


# ---------------------------------------------------------------------------
# Deck elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DeckElement:
    """Affine deck map ``(s, u) -> (sigma lam^k s + t_s, sigma lam^-k u + t_u)``."""

    t_s: QuadNum
    t_u: QuadNum
    k: int
    sigma: int
    lam: QuadNum

    @classmethod
    def identity(cls, lam: QuadNum) -> "DeckElement":
        zero = QuadNum.rational(0, lam.D)
        return cls(zero, zero, 0, 1, lam)

    def is_identity(self) -> bool:
        return self.k == 0 and self.sigma == 1 and not self.t_s and not self.t_u

    def s_factor(self) -> QuadNum:
        return self.sigma * self.lam ** self.k

    def u_factor(self) -> QuadNum:
        return self.sigma * self.lam ** (-self.k)

    def __call__(self, p: Point) -> Point:
        return transport(self, p)

    def compose(self, other: "DeckElement") -> "DeckElement":
        """``self`` after ``other``."""
        return DeckElement(
            t_s=self.s_factor() * other.t_s + self.t_s,
            t_u=self.u_factor() * other.t_u + self.t_u,
            k=self.k + other.k,
            sigma=self.sigma * other.sigma,
            lam=self.lam,
        )

    def inverse(self) -> "DeckElement":
        return DeckElement(
            t_s=-(self.t_s / self.s_factor()),
            t_u=-(self.t_u / self.u_factor()),
            k=-self.k,
            sigma=self.sigma,
            lam=self.lam,
        )

    def to_dict(self) -> dict[str, Any]:
        return {"k": self.k, "sigma": self.sigma, "t_s": self.t_s.to_json(), "t_u": self.t_u.to_json()}


def transport(g: DeckElement, p: Point) -> Point:
    """Image of an eigen-coordinate point under a deck element."""
    return (g.s_factor() * p[0] + g.t_s, g.u_factor() * p[1] + g.t_u)


class _HasNodes(Protocol):
    nodes: Sequence[Point]

    def with_nodes(self, nodes: Sequence[Point]) -> Any: ...


ArcT = TypeVar("ArcT", bound=_HasNodes)


def transport_arc(g: DeckElement, arc: ArcT) -> ArcT:
    """Image of a PL arc; node order along the path is kept."""
    return arc.with_nodes([transport(g, n) for n in arc.nodes])


@dataclass(frozen=True)
class LatticeMap:
    """Deck element in lattice form ``x -> A^k x + v``."""

    k: int
    v: tuple[int, int]
    A: IntMatrix

    def apply(self, x: tuple[Any, Any]) -> tuple[Any, Any]:
        y = mat_apply(mat_pow(self.A, self.k), x)
        return (y[0] + self.v[0], y[1] + self.v[1])

    def compose(self, other: "LatticeMap") -> "LatticeMap":
        """``self`` after ``other``."""
        w = mat_apply(mat_pow(self.A, self.k), other.v)
        return LatticeMap(self.k + other.k, (w[0] + self.v[0], w[1] + self.v[1]), self.A)

    def inverse(self) -> "LatticeMap":
        w = mat_apply(mat_pow(self.A, -self.k), self.v)
        return LatticeMap(-self.k, (-w[0], -w[1]), self.A)

    def is_identity(self) -> bool:
        return self.k == 0 and self.v == (0, 0)

    def as_deck_element(self, os: "OrbitSpace") -> DeckElement:
        return os.deck_element(self.k, self.v)

    def to_dict(self) -> dict[str, Any]:
        return {"k": self.k, "v": list(self.v)}


# ---------------------------------------------------------------------------
# Windows
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Window:
    """Closed axis-parallel box ``[s_lo, s_hi] x [u_lo, u_hi]``."""

    s_lo: QuadNum
    s_hi: QuadNum
    u_lo: QuadNum
    u_hi: QuadNum

    def is_degenerate(self) -> bool:
        return self.s_lo >= self.s_hi or self.u_lo >= self.u_hi

    def contains(self, p: Point) -> bool:
        return self.s_lo <= p[0] <= self.s_hi and self.u_lo <= p[1] <= self.u_hi

    def contains_all(self, pts: Iterable[Point]) -> bool:
        return all(self.contains(p) for p in pts)

    @classmethod
    def around(cls, center: Point, half_s: Scalar, half_u: Optional[Scalar] = None) -> "Window":
        hu = half_s if half_u is None else half_u
        return cls(center[0] - half_s, center[0] + half_s, center[1] - hu, center[1] + hu)

    def scaled(self, factor: Scalar) -> "Window":
        """Window with the same center and both extents multiplied by ``factor``."""
        cs = (self.s_lo + self.s_hi) / 2
        cu = (self.u_lo + self.u_hi) / 2
        hs = (self.s_hi - self.s_lo) / 2 * factor
        hu = (self.u_hi - self.u_lo) / 2 * factor
        return Window(cs - hs, cs + hs, cu - hu, cu + hu)

    def union(self, other: "Window") -> "Window":
        return Window(
            min(self.s_lo, other.s_lo),
            max(self.s_hi, other.s_hi),
            min(self.u_lo, other.u_lo),
            max(self.u_hi, other.u_hi),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "s": [qn_to_float(self.s_lo), qn_to_float(self.s_hi)],
            "u": [qn_to_float(self.u_lo), qn_to_float(self.u_hi)],
            "exact": {
                "s": [self.s_lo.to_json(), self.s_hi.to_json()],
                "u": [self.u_lo.to_json(), self.u_hi.to_json()],
            },
        }

    @classmethod
    def parse(cls, raw: Any, D: int) -> "Window":
        """Parse ``"s0,s1,u0,u1"`` (rationals) or a 4-sequence into a window."""
        parts = raw.split(",") if isinstance(raw, str) else list(raw)
        if len(parts) != 4:
            raise InvalidInputError(f"window must have four bounds s0,s1,u0,u1, got {raw!r}")
        values = [p if isinstance(p, QuadNum) else qn_from_json(str(p).strip(), D=D) for p in parts]
        return cls(values[0], values[1], values[2], values[3])


# ---------------------------------------------------------------------------
# The orbit space
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class OrbitSpace:
    """Eigen-coordinates and deck action for one hyperbolic monodromy."""

    A: IntMatrix
    D: int
    lam: QuadNum
    mu: QuadNum
    beta: QuadNum
    beta_u: QuadNum
    drill: DrillSpec

    @property
    def trace(self) -> int:
        return self.A[0][0] + self.A[1][1]

    @property
    def sigma_A(self) -> int:
        return 1 if self.trace > 0 else -1

    @cached_property
    def lam_inverse(self) -> QuadNum:
        return self.lam.conjugate() if self.lam.norm() == 1 else 1 / self.lam

    @cached_property
    def lam_float(self) -> float:
        return qn_to_float(self.lam)

    def zero(self) -> QuadNum:
        return QuadNum.rational(0, self.D)

    def q(self, value: Scalar) -> QuadNum:
        """Coerce a rational into this field."""
        if isinstance(value, QuadNum):
            return value
        return QuadNum.rational(value, self.D)

    # -- coordinates -----------------------------------------------------

    def s_of(self, x: tuple[Any, Any]) -> QuadNum:
        return self.q(x[0]) + self.beta * x[1]

    def u_of(self, x: tuple[Any, Any]) -> QuadNum:
        return self.q(x[0]) + self.beta_u * x[1]

    def to_eigen(self, x: tuple[Any, Any]) -> Point:
        return (self.s_of(x), self.u_of(x))

    def to_lattice_qn(self, p: Point) -> tuple[QuadNum, QuadNum]:
        x2 = (p[0] - p[1]) / (self.beta - self.beta_u)
        x1 = p[0] - self.beta * x2
        return (x1, x2)

    def to_lattice(self, p: Point) -> LatticePoint:
        x1, x2 = self.to_lattice_qn(p)
        if not (x1.is_rational() and x2.is_rational()):
            raise NotLatticeRational(f"point {p!r} is not lattice-rational")
        return (x1.a, x2.a)

    def is_lattice_rational(self, p: Point) -> bool:
        x1, x2 = self.to_lattice_qn(p)
        return x1.is_rational() and x2.is_rational()

    def stable_direction(self) -> tuple[QuadNum, QuadNum]:
        """Right eigenvector for ``1/mu``, first entry 1 (a vertical leaf direction)."""
        (a, b), _ = self.A
        return (self.q(1), (self.lam_inverse * self.sigma_A - a) / b)

    def unstable_direction(self) -> tuple[QuadNum, QuadNum]:
        """Right eigenvector for ``mu``, first entry 1 (a horizontal leaf direction)."""
        (a, b), _ = self.A
        return (self.q(1), (self.mu - a) / b)

    # -- deck group ------------------------------------------------------

    def lattice_power(self, k: int) -> IntMatrix:
        return mat_pow(self.A, k)

    def deck_element(self, k: int, v: tuple[int, int]) -> DeckElement:
        """Deck map induced by ``x -> A^k x + v``."""
        return DeckElement(
            t_s=self.s_of(v),
            t_u=self.u_of(v),
            k=k,
            sigma=self.sigma_A ** (k % 2),
            lam=self.lam,
        )

    def lattice_map(self, k: int, v: tuple[int, int]) -> LatticeMap:
        return LatticeMap(k, (int(v[0]), int(v[1])), self.A)

    def identity(self) -> DeckElement:
        return DeckElement.identity(self.lam)

    def period_of(self, x: LatticePoint, cap: int = 100_000) -> int:
        """Minimal ``p >= 1`` with ``A^p x = x mod Z^2``."""
        base = (_frac_part(x[0]), _frac_part(x[1]))
        y = base
        for p in range(1, cap + 1):
            y = mat_apply(self.A, y)
            y = (_frac_part(y[0]), _frac_part(y[1]))
            if y == base:
                return p
        raise InvariantBreach(f"no period found for {x} within {cap} iterates")

    def orbit_cosets(self, x: LatticePoint) -> list[LatticePoint]:
        """Fractional parts of ``A^j x`` over one period."""
        y = (_frac_part(x[0]), _frac_part(x[1]))
        out = [y]
        for _ in range(self.period_of(x) - 1):
            z = mat_apply(self.A, y)
            y = (_frac_part(z[0]), _frac_part(z[1]))
            out.append(y)
        return out

    def stabilizer_map(self, x: LatticePoint) -> LatticeMap:
        """Primitive lattice map fixing ``x``, with positive height."""
        p = self.period_of(x)
        ax = mat_apply(self.lattice_power(p), x)
        v = (x[0] - ax[0], x[1] - ax[1])
        if v[0].denominator != 1 or v[1].denominator != 1:
            raise InvariantBreach(f"stabilizer translation of {x} is not integral: {v}")
        return self.lattice_map(p, (int(v[0]), int(v[1])))

    def stabilizer(self, point: Point) -> DeckElement:
        """Primitive stabilizer of a lattice-rational eigen point."""
        return self.stabilizer_map(self.to_lattice(point)).as_deck_element(self)

    def same_orbit(self, p: Point, q: Point) -> bool:
        """Exact test for ``q = g p`` with ``g`` in the deck group."""
        xp = self.to_lattice_qn(p)
        xq = self.to_lattice_qn(q)
        p_rat = xp[0].is_rational() and xp[1].is_rational()
        q_rat = xq[0].is_rational() and xq[1].is_rational()
        if p_rat != q_rat:
            return False
        if p_rat:
            # A is unimodular, so the order of a point in (Q/Z)^2 is an orbit invariant
            if _order(xp[0].a, xp[1].a) != _order(xq[0].a, xq[1].a):
                return False
            target = (_frac_part(xq[0].a), _frac_part(xq[1].a))
            return target in self.orbit_cosets((xp[0].a, xp[1].a))
        irr_p = (xp[0].b, xp[1].b)
        irr_q = (xq[0].b, xq[1].b)
        sp = self.s_of(irr_p)
        sq = self.s_of(irr_q)
        candidates: set[int] = {0}
        if sp and sq:
            ratio = abs(qn_to_float(sq) / qn_to_float(sp))
            if ratio > 0:
                est = round(math.log(ratio) / math.log(self.lam_float))
                candidates.update({est - 1, est, est + 1})
        for k in sorted(candidates):
            mk = self.lattice_power(k)
            if mat_apply(mk, irr_p) != irr_q:
                continue
            rat = mat_apply(mk, (xp[0].a, xp[1].a))
            dv = (xq[0].a - rat[0], xq[1].a - rat[1])
            if dv[0].denominator == 1 and dv[1].denominator == 1:
                return True
        return False

    def lattice_point_of(self, x: LatticePoint) -> Point:
        return self.to_eigen(x)

    def drill_point(self) -> Point:
        return self.to_eigen(self.drill.point)

    def to_dict(self) -> dict[str, Any]:
        return {
            "matrix": [list(r) for r in self.A],
            "D": self.D,
            "lambda": self.lam.to_json(),
            "lambda_float": self.lam_float,
            "sigma": self.sigma_A,
            "drill": self.drill.to_dict(),
        }


def build_orbit_space(spec: MonodromySpec) -> OrbitSpace:
    """Eigen-coordinates, dilatation and deck action for ``spec``.

    Raises:
        NotHyperbolic: if ``|trace| <= 2``.
        BadDrilledPoint: if the drilled point is not fixed by ``A**period``.
    """
    A = monodromy_matrix(spec)
    (a, b), (c, d) = A
    trace = a + d
    if abs(trace) <= 2:
        raise NotHyperbolic(f"monodromy {A} has trace {trace}; need |trace| > 2")
    f, D = sqrt_free_part(trace * trace - 4)
    lam = QuadNum(Fraction(abs(trace), 2), Fraction(f, 2), D)
    sigma = 1 if trace > 0 else -1
    mu = lam * sigma
    mu_inv = mu.conjugate()
    beta = (mu - a) / c
    beta_u = (mu_inv - a) / c

    # Rows (1, beta) and (1, beta_u) must be left eigenvectors.
    for row, ev in (((1, beta), mu), ((1, beta_u), mu_inv)):
        image = (row[0] * a + row[1] * c, row[0] * b + row[1] * d)
        if image[0] != ev * row[0] or image[1] != ev * row[1]:
            raise InvariantBreach(f"eigen basis check failed for {A}")

    space = OrbitSpace(A=A, D=D, lam=lam, mu=mu, beta=beta, beta_u=beta_u, drill=spec.drill)

    x = spec.drill.point
    ax = mat_apply(mat_pow(A, spec.drill.period), x)
    if _frac_part(ax[0]) != _frac_part(x[0]) or _frac_part(ax[1]) != _frac_part(x[1]):
        raise BadDrilledPoint(
            f"drill point {x} is not fixed by A^{spec.drill.period} modulo Z^2"
        )
    minimal = space.period_of(x)
    if minimal != spec.drill.period:
        logger.info("Drill period %d reduced to minimal period %d", spec.drill.period, minimal)
        space = OrbitSpace(
            A=A, D=D, lam=lam, mu=mu, beta=beta, beta_u=beta_u,
            drill=DrillSpec(period=minimal, point=x),
        )
    logger.info("Orbit space for A=%s: lambda=%.12f, D=%d, sigma=%+d", A, space.lam_float, D, sigma)
    return space


def point_to_json(p: Point) -> list[dict[str, Any]]:
    return [p[0].to_json(), p[1].to_json()]


def point_from_json(raw: Any) -> Point:
    if not isinstance(raw, (list, tuple)) or len(raw) != 2:
        raise InvalidInputError(f"point must be a pair, got {raw!r}")
    return (qn_from_json(raw[0]), qn_from_json(raw[1]))


def point_to_float(p: Point) -> tuple[float, float]:
    return (qn_to_float(p[0]), qn_to_float(p[1]))
