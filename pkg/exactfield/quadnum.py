"""Exact arithmetic in a real quadratic field Q(sqrt(D)).

A ``QuadNum`` is the value ``a + b*sqrt(D)`` with rational ``a``, ``b`` and a
square-free ``D >= 2``, under the embedding with ``sqrt(D) > 0``. Signs and
comparisons use integer arithmetic only. ``float()`` is provided for display
and for the numeric modules, never for decisions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Any, Union

from core.errors import InvalidInputError

RationalLike = Union[int, Fraction]

# Bits of precision used when approximating sqrt(D) for float conversion.
_FLOAT_SCALE_BITS = 96


class MixedField(InvalidInputError):
    """Raised when two irrational values from different fields interact."""


class DivisionByZero(InvalidInputError, ZeroDivisionError):
    """Raised on division by an exact zero."""


class Ordering(Enum):
    LT = -1
    EQ = 0
    GT = 1


@lru_cache(maxsize=None)
def _is_square_free(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        f += 1
    return True


@lru_cache(maxsize=None)
def sqrt_free_part(n: int) -> tuple[int, int]:
    """Split a positive integer as ``n = f**2 * D`` with ``D`` square-free.

    Returns ``(f, D)``. A perfect square gives ``D == 1``.
    """
    if n <= 0:
        raise InvalidInputError(f"sqrt_free_part needs a positive integer, got {n}")
    f, rest, p = 1, n, 2
    while p * p <= rest:
        while rest % (p * p) == 0:
            rest //= p * p
            f *= p
        p += 1
    return f, rest


def _sign_of(a: Fraction, b: Fraction, D: int) -> int:
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # Opposite signs: the larger square wins.
    lhs = a * a
    rhs = b * b * D
    if lhs > rhs:
        return sa
    if lhs < rhs:
        return sb
    return 0


def _scaled_surd(b: Fraction, D: int) -> Fraction:
    """Approximate ``|b| * sqrt(D)`` to about ``_FLOAT_SCALE_BITS`` bits."""
    n, d = abs(b.numerator), b.denominator
    root = math.isqrt((n * n * D) << (2 * _FLOAT_SCALE_BITS))
    return Fraction(root, d << _FLOAT_SCALE_BITS)


@dataclass(frozen=True, eq=False)
class QuadNum:
    """Element ``a + b*sqrt(D)`` of a real quadratic field."""

    a: Fraction
    b: Fraction
    D: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if not isinstance(self.D, int) or not _is_square_free(self.D):
            raise InvalidInputError(f"D must be a square-free integer >= 2, got {self.D!r}")

    # -- construction ----------------------------------------------------

    @classmethod
    def rational(cls, value: RationalLike, D: int) -> "QuadNum":
        return cls(Fraction(value), Fraction(0), D)

    @classmethod
    def surd(cls, D: int) -> "QuadNum":
        """The value ``sqrt(D)``."""
        return cls(Fraction(0), Fraction(1), D)

    def _coerce(self, other: Any) -> "QuadNum":
        if isinstance(other, QuadNum):
            if other.D == self.D:
                return other
            if other.b == 0:
                return QuadNum(other.a, Fraction(0), self.D)
            if self.b == 0:
                # self is rational; the caller re-dispatches on other's field.
                return other
            raise MixedField(f"cannot combine Q(sqrt({self.D})) with Q(sqrt({other.D}))")
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadNum(Fraction(other), Fraction(0), self.D)
        if isinstance(other, Rational):
            return QuadNum(Fraction(other.numerator, other.denominator), Fraction(0), self.D)
        return NotImplemented  # type: ignore[return-value]

    def _pair(self, other: Any) -> tuple["QuadNum", "QuadNum"]:
        y = self._coerce(other)
        if y is NotImplemented:
            return self, y
        if y.D != self.D:
            return QuadNum(self.a, self.b, y.D), y
        return self, y

    # -- predicates ------------------------------------------------------

    def sign(self) -> int:
        return _sign_of(self.a, self.b, self.D)

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    # -- field operations ------------------------------------------------

    def conjugate(self) -> "QuadNum":
        return QuadNum(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        """Field norm ``a**2 - b**2 * D``."""
        return self.a * self.a - self.b * self.b * self.D

    def __neg__(self) -> "QuadNum":
        return QuadNum(-self.a, -self.b, self.D)

    def __pos__(self) -> "QuadNum":
        return self

    def __abs__(self) -> "QuadNum":
        return -self if self.sign() < 0 else self

    def __add__(self, other: Any) -> "QuadNum":
        x, y = self._pair(other)
        if y is NotImplemented:
            return NotImplemented
        return QuadNum(x.a + y.a, x.b + y.b, x.D)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "QuadNum":
        x, y = self._pair(other)
        if y is NotImplemented:
            return NotImplemented
        return QuadNum(x.a - y.a, x.b - y.b, x.D)

    def __rsub__(self, other: Any) -> "QuadNum":
        return (-self).__add__(other)

    def __mul__(self, other: Any) -> "QuadNum":
        x, y = self._pair(other)
        if y is NotImplemented:
            return NotImplemented
        return QuadNum(x.a * y.a + x.b * y.b * x.D, x.a * y.b + x.b * y.a, x.D)

    __rmul__ = __mul__

    def inverse(self) -> "QuadNum":
        n = self.norm()
        if n == 0:
            raise DivisionByZero("division by zero in quadratic field")
        return QuadNum(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other: Any) -> "QuadNum":
        x, y = self._pair(other)
        if y is NotImplemented:
            return NotImplemented
        return x * y.inverse()

    def __rtruediv__(self, other: Any) -> "QuadNum":
        x, y = self._pair(other)
        if y is NotImplemented:
            return NotImplemented
        return y * x.inverse()

    def __pow__(self, exponent: int) -> "QuadNum":
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        e = abs(exponent)
        result = QuadNum(Fraction(1), Fraction(0), self.D)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- ordering --------------------------------------------------------

    def _cmp(self, other: Any) -> int:
        x, y = self._pair(other)
        if y is NotImplemented:
            raise TypeError(f"cannot compare QuadNum with {type(other).__name__}")
        return _sign_of(x.a - y.a, x.b - y.b, x.D)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadNum):
            if other.D != self.D:
                return self.b == 0 and other.b == 0 and self.a == other.a
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def __lt__(self, other: Any) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: Any) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: Any) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: Any) -> bool:
        return self._cmp(other) >= 0

    # -- conversions -----------------------------------------------------

    def __float__(self) -> float:
        return qn_to_float(self)

    def floor(self) -> int:
        """Exact floor."""
        guess = math.floor(float(self))
        while self < guess:
            guess -= 1
        while self >= guess + 1:
            guess += 1
        return guess

    def to_json(self) -> dict[str, Any]:
        return qn_to_json(self)

    def __repr__(self) -> str:
        if self.b == 0:
            return f"QuadNum({self.a})"
        return f"QuadNum({self.a} + {self.b}*sqrt({self.D}))"


def qn_arith(x: QuadNum, y: QuadNum, op: str) -> QuadNum:
    """Apply ``op`` in {add, sub, mul, div} to two field elements."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise InvalidInputError(f"unknown field operation: {op!r}")


def qn_cmp(x: QuadNum, y: QuadNum) -> Ordering:
    return Ordering(x._cmp(y))


def qn_sign(x: QuadNum) -> int:
    return x.sign()


def qn_to_float(x: QuadNum) -> float:
    """Nearest double to ``x``; for display and numerics only."""
    if x.b == 0:
        return float(x.a)
    surd = _scaled_surd(x.b, x.D)
    if x.b < 0:
        surd = -surd
    if x.a == 0 or (x.a > 0) == (x.b > 0):
        return float(x.a + surd)
    # a and b*sqrt(D) cancel; use the conjugate-free quotient instead.
    return float(x.norm() / (x.a - surd))


def qn_to_json(x: QuadNum) -> dict[str, Any]:
    return {"a": str(x.a), "b": str(x.b), "D": x.D}


def qn_from_json(payload: Any, D: int | None = None) -> QuadNum:
    """Parse a QuadNum from its JSON object or a bare rational string."""
    if isinstance(payload, dict):
        try:
            return QuadNum(Fraction(str(payload["a"])), Fraction(str(payload.get("b", "0"))), int(payload["D"]))
        except (KeyError, ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"malformed QuadNum payload: {payload!r}") from exc
    if isinstance(payload, (str, int)) and D is not None:
        try:
            return QuadNum.rational(Fraction(str(payload)), D)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"malformed rational: {payload!r}") from exc
    raise InvalidInputError(f"cannot parse QuadNum from {payload!r}")
