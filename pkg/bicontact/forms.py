"""Sampled differential forms on a three-dimensional chart.

Coefficients are ``ScalarField3`` objects: numpy evaluators over ``(x, y, z)``
that may carry analytic partial derivatives. Fields built by arithmetic from
fields with partials get their partials by the sum, product and quotient
rules, so the exterior derivative of such a form is exact up to float
rounding. Fields without partials are differentiated by central differences.

Basis order per degree:

* 0: ``1``
* 1: ``dx, dy, dz``
* 2: ``dy^dz, dz^dx, dx^dy``
* 3: ``dx^dy^dz``
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterator, Literal, Optional, Protocol, Sequence, Union

import numpy as np

from bicontact.config import FD_STEP, SLAB_DEPTH
from core.errors import InvalidInputError

Array = np.ndarray
Evaluator = Callable[[Array, Array, Array], Array]
Grid = tuple[Array, Array, Array]

BASIS: dict[int, tuple[str, ...]] = {
    0: ("1",),
    1: ("dx", "dy", "dz"),
    2: ("dydz", "dzdx", "dxdy"),
    3: ("dxdydz",),
}


class DegreeOverflow(InvalidInputError):
    """Raised when a product or derivative would exceed degree 3."""


class Curve(Protocol):
    """A smooth function of one variable that knows its derivative."""

    def __call__(self, v: Array) -> Array: ...

    def deriv(self) -> "Curve": ...


@dataclass(frozen=True)
class ExpCurve:
    """``scale * exp(rate * v)``."""

    rate: float
    scale: float = 1.0

    def __call__(self, v: Array) -> Array:
        return self.scale * np.exp(self.rate * v)

    def deriv(self) -> "ExpCurve":
        return ExpCurve(self.rate, self.scale * self.rate)


Operand = Union["ScalarField3", float, int]


@dataclass(frozen=True, eq=False)
class ScalarField3:
    """A smooth function on the chart, optionally with analytic partials.

    ``partials`` is a thunk so that derivative towers are built lazily.
    """

    evaluator: Evaluator
    partials: Optional[Callable[[], tuple["ScalarField3", "ScalarField3", "ScalarField3"]]] = None
    label: str = ""

    def __call__(self, x: Array, y: Array, z: Array) -> Array:
        x, y, z = np.broadcast_arrays(*(np.asarray(a, dtype=np.float64) for a in (x, y, z)))
        out = np.asarray(self.evaluator(x, y, z), dtype=np.float64)
        if out.shape != x.shape:
            out = np.broadcast_to(out, x.shape).copy()
        return out

    @property
    def has_partials(self) -> bool:
        return self.partials is not None

    @cached_property
    def gradient(self) -> tuple["ScalarField3", "ScalarField3", "ScalarField3"]:
        if self.partials is None:
            raise InvalidInputError(f"field {self.label or '<anonymous>'} has no analytic partials")
        return self.partials()

    def partial(self, axis: int, step: Optional[float] = None) -> "ScalarField3":
        """Partial derivative along ``axis``.

        Analytic when available and ``step`` is None; a central difference
        at ``step`` (default ``FD_STEP``) otherwise.
        """
        if step is None and self.has_partials:
            return self.gradient[axis]
        h = FD_STEP if step is None else step
        if h <= 0:
            raise InvalidInputError(f"difference step must be positive, got {h}")
        offset = [0.0, 0.0, 0.0]
        offset[axis] = h

        def central(x: Array, y: Array, z: Array) -> Array:
            ahead = self(x + offset[0], y + offset[1], z + offset[2])
            behind = self(x - offset[0], y - offset[1], z - offset[2])
            return (ahead - behind) / (2.0 * h)

        return ScalarField3(central, None, f"d{axis}({self.label})")

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c: float) -> "ScalarField3":
        value = float(c)

        def grad() -> tuple[ScalarField3, ScalarField3, ScalarField3]:
            zero = cls.constant(0.0)
            return zero, zero, zero

        return cls(lambda x, y, z: np.full(np.shape(x), value), grad, repr(value))

    @classmethod
    def along(cls, axis: int, curve: Curve, label: str = "") -> "ScalarField3":
        """``curve`` applied to the ``axis`` coordinate."""

        def grad() -> tuple[ScalarField3, ScalarField3, ScalarField3]:
            parts = [cls.constant(0.0)] * 3
            parts[axis] = cls.along(axis, curve.deriv(), f"{label}'")
            return parts[0], parts[1], parts[2]

        return cls(lambda x, y, z: curve((x, y, z)[axis]), grad, label)

    @classmethod
    def coordinate(cls, axis: int) -> "ScalarField3":
        return cls.along(axis, np.polynomial.Polynomial([0.0, 1.0]), "xyz"[axis])

    # -- arithmetic -----------------------------------------------------------

    @staticmethod
    def lift(value: Operand) -> "ScalarField3":
        return value if isinstance(value, ScalarField3) else ScalarField3.constant(value)

    def _combine(self, other: "ScalarField3", op: Callable[[Array, Array], Array], rule, label: str) -> "ScalarField3":
        partials = None
        if self.has_partials and other.has_partials:
            a, b = self, other

            def partials() -> tuple[ScalarField3, ScalarField3, ScalarField3]:
                return tuple(rule(a, b, a.gradient[i], b.gradient[i]) for i in range(3))  # type: ignore[return-value]

        return ScalarField3(lambda x, y, z: op(self(x, y, z), other(x, y, z)), partials, label)

    def __add__(self, other: Operand) -> "ScalarField3":
        return self._combine(self.lift(other), np.add, lambda a, b, da, db: da + db, f"({self.label}+..)")

    __radd__ = __add__

    def __sub__(self, other: Operand) -> "ScalarField3":
        return self._combine(self.lift(other), np.subtract, lambda a, b, da, db: da - db, f"({self.label}-..)")

    def __rsub__(self, other: Operand) -> "ScalarField3":
        return self.lift(other) - self

    def __neg__(self) -> "ScalarField3":
        return self * -1.0

    def __mul__(self, other: Operand) -> "ScalarField3":
        return self._combine(
            self.lift(other), np.multiply, lambda a, b, da, db: da * b + a * db, f"({self.label}*..)"
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Operand) -> "ScalarField3":
        return self._combine(
            self.lift(other),
            np.divide,
            lambda a, b, da, db: (da * b - a * db) / (b * b),
            f"({self.label}/..)",
        )

    def __rtruediv__(self, other: Operand) -> "ScalarField3":
        return self.lift(other) / self


VectorField3 = tuple[ScalarField3, ScalarField3, ScalarField3]


def vector_field(*components: Operand) -> VectorField3:
    if len(components) != 3:
        raise InvalidInputError(f"vector fields have 3 components, got {len(components)}")
    a, b, c = (ScalarField3.lift(v) for v in components)
    return a, b, c


@dataclass(frozen=True)
class FormField:
    """A differential form of degree 0..3 with one field per basis element."""

    degree: int
    coefficients: tuple[ScalarField3, ...]

    def __post_init__(self) -> None:
        if self.degree not in BASIS:
            raise DegreeOverflow(f"form degree must be 0..3, got {self.degree}")
        if len(self.coefficients) != math.comb(3, self.degree):
            raise InvalidInputError(
                f"degree {self.degree} forms have {math.comb(3, self.degree)} components, "
                f"got {len(self.coefficients)}"
            )

    @classmethod
    def of(cls, degree: int, *coefficients: Operand) -> "FormField":
        return cls(degree, tuple(ScalarField3.lift(c) for c in coefficients))

    @classmethod
    def zero(cls, degree: int) -> "FormField":
        return cls.of(degree, *([0.0] * math.comb(3, degree)))

    @property
    def basis(self) -> tuple[str, ...]:
        return BASIS[self.degree]

    @property
    def has_partials(self) -> bool:
        return all(c.has_partials for c in self.coefficients)

    def component(self, name: str) -> ScalarField3:
        try:
            return self.coefficients[self.basis.index(name)]
        except ValueError:
            raise InvalidInputError(f"no {name} component in a degree {self.degree} form") from None

    def evaluate(self, x: Array, y: Array, z: Array) -> Array:
        """Stacked component values, shape ``(n_components, *grid_shape)``."""
        return np.stack([c(x, y, z) for c in self.coefficients])

    def __add__(self, other: "FormField") -> "FormField":
        self._same_degree(other)
        return FormField(self.degree, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: "FormField") -> "FormField":
        self._same_degree(other)
        return FormField(self.degree, tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def scaled(self, f: Operand) -> "FormField":
        return FormField(self.degree, tuple(c * f for c in self.coefficients))

    def _same_degree(self, other: "FormField") -> None:
        if other.degree != self.degree:
            raise InvalidInputError(f"cannot add forms of degree {self.degree} and {other.degree}")


def ext_d(form: FormField, step: Optional[float] = None) -> FormField:
    """Exterior derivative.

    Exact partials are used when ``step`` is None and every coefficient has
    them; otherwise central differences at ``step`` (``FD_STEP`` if unset).
    A 3-form is closed and gives the zero 3-form.
    """

    def d(f: ScalarField3, axis: int) -> ScalarField3:
        if step is None:
            return f.partial(axis)
        return f.partial(axis, step)

    c = form.coefficients
    if form.degree == 0:
        f = c[0]
        return FormField(1, (d(f, 0), d(f, 1), d(f, 2)))
    if form.degree == 1:
        p, q, r = c
        return FormField(2, (d(r, 1) - d(q, 2), d(p, 2) - d(r, 0), d(q, 0) - d(p, 1)))
    if form.degree == 2:
        a, b, cc = c
        return FormField(3, (d(a, 0) + d(b, 1) + d(cc, 2),))
    return FormField.zero(3)


def wedge(a: FormField, b: FormField) -> FormField:
    """Exterior product ``a ^ b``."""
    if a.degree + b.degree > 3:
        raise DegreeOverflow(f"cannot wedge degree {a.degree} with degree {b.degree}")
    if a.degree == 0:
        return b.scaled(a.coefficients[0])
    if b.degree == 0:
        return a.scaled(b.coefficients[0])
    if a.degree == 1 and b.degree == 1:
        p, q, r = a.coefficients
        p2, q2, r2 = b.coefficients
        return FormField(2, (q * r2 - r * q2, r * p2 - p * r2, p * q2 - q * p2))
    # 1 ^ 2 and 2 ^ 1 agree: even degrees commute
    one, two = (a, b) if a.degree == 1 else (b, a)
    p, q, r = one.coefficients
    s, t, u = two.coefficients
    return FormField(3, (p * s + q * t + r * u,))


def interior(form: FormField, v: VectorField3) -> FormField:
    """Contraction ``i_v form``."""
    if form.degree == 0:
        raise InvalidInputError("cannot contract a 0-form")
    vx, vy, vz = v
    c = form.coefficients
    if form.degree == 1:
        return FormField(0, (c[0] * vx + c[1] * vy + c[2] * vz,))
    if form.degree == 2:
        a, b, cc = c
        return FormField(1, (b * vz - cc * vy, cc * vx - a * vz, a * vy - b * vx))
    top = c[0]
    return FormField(2, (top * vx, top * vy, top * vz))


# ---------------------------------------------------------------------------
# Grids and reductions
# ---------------------------------------------------------------------------

def sample_grid(
    bounds: Sequence[tuple[float, float]],
    n: int,
    periodic_last: bool = False,
) -> Grid:
    """An ``n^3`` grid over the box ``bounds`` (``indexing="ij"``)."""
    if n < 2:
        raise InvalidInputError(f"grid needs at least 2 points per axis, got {n}")
    axes = [np.linspace(lo, hi, n) for lo, hi in bounds[:2]]
    lo, hi = bounds[2]
    axes.append(np.linspace(lo, hi, n, endpoint=not periodic_last))
    x, y, z = np.meshgrid(*axes, indexing="ij")
    return x, y, z


def slabs(grid: Grid, depth: int = SLAB_DEPTH) -> Iterator[Grid]:
    """Split a grid into chunks of ``depth`` z-slices."""
    x, y, z = grid
    for start in range(0, x.shape[-1], depth):
        sl = (Ellipsis, slice(start, start + depth))
        yield x[sl], y[sl], z[sl]


def extreme(
    values: Callable[[Array, Array, Array], Array],
    grid: Grid,
    how: Literal["min", "max"],
    mask: Optional[Callable[[Array, Array, Array], Array]] = None,
    depth: int = SLAB_DEPTH,
) -> float:
    """Min or max of ``values`` over the grid, chunk by chunk.

    Points where ``mask`` is false are ignored. Returns nan when no point
    is selected.
    """
    reduce = np.min if how == "min" else np.max
    found: list[float] = []
    for x, y, z in slabs(grid, depth):
        v = values(x, y, z)
        if mask is not None:
            v = v[mask(x, y, z)]
        if v.size:
            found.append(float(reduce(v)))
    return float(reduce(found)) if found else float("nan")


def richardson_order(
    form: FormField,
    grid: Grid,
    steps: Optional[Sequence[float]] = None,
) -> float:
    """Observed order of the central-difference ``ext_d`` of ``form``.

    Errors against the analytic derivative at ``h, h/2, h/4`` are fitted on
    a log-log scale. Returns ``inf`` when the differences are exact to
    rounding (polynomials of degree at most 2).
    """
    if not form.has_partials:
        raise InvalidInputError("richardson_order needs a form with analytic partials")
    hs = list(steps) if steps is not None else [1e-2, 5e-3, 2.5e-3]
    if len(hs) < 2:
        raise InvalidInputError("richardson_order needs at least two steps")
    exact = ext_d(form).evaluate(*grid)
    errors = [float(np.max(np.abs(ext_d(form, h).evaluate(*grid) - exact))) for h in hs]
    if max(errors) < 1e-11:
        return float("inf")
    slope, _ = np.polyfit(np.log(hs), np.log(np.maximum(errors, 1e-300)), 1)
    return float(slope)
