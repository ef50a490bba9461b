"""Monodromy specs: words in L and R, explicit matrices and drilled orbits.

Input files are YAML or JSON (JSON parses as YAML)::

    {"word": "LR", "drill": {"period": 1, "point": ["0", "0"]}}
    {"matrix": [[2, 1], [1, 1]]}

Puncture files list torus points with rational coordinates::

    {"punctures": [["1/5", "2/5"], ["3/5", "1/5"]]}
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

import yaml

from core.errors import InvalidInputError

logger = logging.getLogger(__name__)

IntMatrix = tuple[tuple[int, int], tuple[int, int]]
LatticePoint = tuple[Fraction, Fraction]

L_MATRIX: IntMatrix = ((1, 1), (0, 1))
R_MATRIX: IntMatrix = ((1, 0), (1, 1))
IDENTITY: IntMatrix = ((1, 0), (0, 1))


class BadMonodromy(InvalidInputError):
    """Raised for malformed words or matrices that are not in SL(2, Z)."""


class NotHyperbolic(InvalidInputError):
    """Raised when the monodromy has ``|trace| <= 2``."""


class BadDrilledPoint(InvalidInputError):
    """Raised when the drilled point is not periodic with the stated period."""


def mat_mul(x: IntMatrix, y: IntMatrix) -> IntMatrix:
    return (
        (x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]),
        (x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]),
    )


def mat_inv(x: IntMatrix) -> IntMatrix:
    """Inverse of a determinant-one integer matrix."""
    (a, b), (c, d) = x
    return ((d, -b), (-c, a))


def mat_pow(x: IntMatrix, k: int) -> IntMatrix:
    base = x if k >= 0 else mat_inv(x)
    result = IDENTITY
    e = abs(k)
    while e:
        if e & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        e >>= 1
    return result


def mat_apply(x: IntMatrix, v: tuple[Any, Any]) -> tuple[Any, Any]:
    return (x[0][0] * v[0] + x[0][1] * v[1], x[1][0] * v[0] + x[1][1] * v[1])


def parse_word(word: str) -> IntMatrix:
    """Product of ``L`` and ``R`` factors, read left to right."""
    text = word.strip().upper()
    if not text or any(ch not in "LR" for ch in text):
        raise BadMonodromy(f"monodromy word must be a nonempty string over L/R, got {word!r}")
    result = IDENTITY
    for ch in text:
        result = mat_mul(result, L_MATRIX if ch == "L" else R_MATRIX)
    return result


def _fraction(raw: Any, what: str) -> Fraction:
    try:
        return Fraction(str(raw).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"{what} must be a rational like 'p/q', got {raw!r}") from exc


def parse_lattice_point(raw: Any, what: str = "point") -> LatticePoint:
    if isinstance(raw, str):
        raw = [p for p in raw.split(",")]
    if not isinstance(raw, (list, tuple)) or len(raw) != 2:
        raise InvalidInputError(f"{what} must be a pair of rationals, got {raw!r}")
    return (_fraction(raw[0], what), _fraction(raw[1], what))


@dataclass(frozen=True)
class DrillSpec:
    """Drilled periodic orbit: a torus point fixed by ``A**period`` mod Z^2."""

    period: int = 1
    point: LatticePoint = (Fraction(0), Fraction(0))

    def to_dict(self) -> dict[str, Any]:
        return {"period": self.period, "point": [str(self.point[0]), str(self.point[1])]}


@dataclass(frozen=True)
class MonodromySpec:
    """Torus monodromy as a word or explicit matrix, plus the drilled orbit."""

    matrix: IntMatrix
    word: Optional[str] = None
    drill: DrillSpec = field(default_factory=DrillSpec)

    def to_dict(self) -> dict[str, Any]:
        payload: dict[str, Any] = {"matrix": [list(r) for r in self.matrix], "drill": self.drill.to_dict()}
        if self.word is not None:
            payload["word"] = self.word
        return payload


def monodromy_matrix(spec: MonodromySpec) -> IntMatrix:
    """Validated monodromy matrix of ``spec`` (determinant one)."""
    (a, b), (c, d) = spec.matrix
    if a * d - b * c != 1:
        raise BadMonodromy(f"monodromy must have determinant 1, got {a * d - b * c}")
    return spec.matrix


def parse_drill(raw: Any) -> DrillSpec:
    """Parse ``{"period": k, "point": [..]}`` or the flag form ``"k:x,y"``."""
    if raw is None:
        return DrillSpec()
    if isinstance(raw, str):
        text = raw.strip()
        period_text, _, point_text = text.partition(":")
        if not point_text:
            raise InvalidInputError(f"drill flag must look like 'k:x,y', got {raw!r}")
        raw = {"period": period_text, "point": point_text}
    if not isinstance(raw, dict):
        raise InvalidInputError(f"drill must be a mapping, got {type(raw).__name__}")
    try:
        period = int(raw.get("period", 1))
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"drill period must be an integer, got {raw.get('period')!r}") from exc
    if period < 1:
        raise BadDrilledPoint(f"drill period must be >= 1, got {period}")
    point = parse_lattice_point(raw.get("point", ["0", "0"]), "drill point")
    return DrillSpec(period=period, point=point)


def parse_matrix(raw: Any) -> IntMatrix:
    if isinstance(raw, str):
        try:
            nums = [int(p) for p in raw.replace(";", ",").split(",")]
        except ValueError as exc:
            raise BadMonodromy(f"matrix flag must be 'a,b,c,d', got {raw!r}") from exc
        raw = [nums[:2], nums[2:]] if len(nums) == 4 else None
    if (
        not isinstance(raw, (list, tuple))
        or len(raw) != 2
        or any(not isinstance(r, (list, tuple)) or len(r) != 2 for r in raw)
    ):
        raise BadMonodromy(f"matrix must be 2x2, got {raw!r}")
    try:
        return ((int(raw[0][0]), int(raw[0][1])), (int(raw[1][0]), int(raw[1][1])))
    except (TypeError, ValueError) as exc:
        raise BadMonodromy(f"matrix entries must be integers, got {raw!r}") from exc


def parse_monodromy_spec(payload: Any) -> MonodromySpec:
    """Build a ``MonodromySpec`` from a decoded mapping."""
    if not isinstance(payload, dict):
        raise InvalidInputError(f"monodromy spec must be a mapping, got {type(payload).__name__}")
    word = payload.get("word")
    if word is not None:
        matrix = parse_word(str(word))
        word = str(word).strip().upper()
    elif payload.get("matrix") is not None:
        matrix = parse_matrix(payload["matrix"])
    else:
        raise BadMonodromy("monodromy spec needs a 'word' or a 'matrix'")
    spec = MonodromySpec(matrix=matrix, word=word, drill=parse_drill(payload.get("drill")))
    monodromy_matrix(spec)
    return spec


def _load_yaml(path: str, what: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return yaml.safe_load(f)
    except FileNotFoundError as exc:
        raise InvalidInputError(f"{what} file not found: {path}") from exc
    except yaml.YAMLError as exc:
        raise InvalidInputError(f"Failed to parse {what} at {path}: {exc}") from exc


def load_monodromy_spec(path: str) -> MonodromySpec:
    return parse_monodromy_spec(_load_yaml(path, "monodromy spec"))


def parse_punctures(payload: Any) -> list[LatticePoint]:
    if isinstance(payload, dict):
        payload = payload.get("punctures")
    if payload is None:
        return []
    if not isinstance(payload, list):
        raise InvalidInputError(f"punctures must be a list of points, got {type(payload).__name__}")
    return [parse_lattice_point(p, "puncture") for p in payload]


def load_punctures(path: str) -> list[LatticePoint]:
    points = parse_punctures(_load_yaml(path, "puncture"))
    logger.info("Loaded %d puncture representatives from %s", len(points), path)
    return points
