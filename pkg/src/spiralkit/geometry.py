"""Planar vectors and single-segment quartic Bezier curves.

The module is deliberately scalar and allocation-light: everything is a
frozen dataclass over two floats, and curve evaluation runs on the
de Casteljau scheme so it stays stable near the parameter endpoints.

Curvature follows the signed planar convention: positive when the curve
bends to the left of its travel direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import DomainError, SingularityError

__all__ = [
    "Vec2",
    "Point2",
    "UnitVec2",
    "QuarticBezier",
    "bernstein",
    "curvature",
    "curvature_derivative",
]

# Guard threshold for curvature evaluation, relative to curve diameter.
SINGULAR_SPEED_FRACTION = 1e-12


@dataclass(frozen=True)
class Vec2:
    """A point or displacement in the plane."""

    x: float
    y: float

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __mul__(self, s: float) -> "Vec2":
        return Vec2(self.x * s, self.y * s)

    __rmul__ = __mul__

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def dot(self, other: "Vec2") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Vec2") -> float:
        """z-component of the 3d cross product (the planar outer product)."""
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def norm_sq(self) -> float:
        return self.x * self.x + self.y * self.y

    def perp(self) -> "Vec2":
        """Rotate by +90 degrees (anticlockwise)."""
        return Vec2(-self.y, self.x)

    def rotated(self, angle: float) -> "Vec2":
        c, s = math.cos(angle), math.sin(angle)
        return Vec2(c * self.x - s * self.y, s * self.x + c * self.y)


# Points and displacements share a representation.
Point2 = Vec2


@dataclass(frozen=True)
class UnitVec2:
    """A direction: a Vec2 constrained to unit length.

    Constructed via :meth:`from_vec` or :meth:`from_angle`; the raw
    constructor trusts its inputs and is meant for internal rotations
    where unit length is preserved analytically.
    """

    x: float
    y: float

    @classmethod
    def from_vec(cls, v: Vec2) -> "UnitVec2":
        n = v.norm()
        if n == 0.0 or not math.isfinite(n):
            raise DomainError("cannot normalize a zero or non-finite vector")
        return cls(v.x / n, v.y / n)

    @classmethod
    def from_angle(cls, angle: float) -> "UnitVec2":
        return cls(math.cos(angle), math.sin(angle))

    def vec(self) -> Vec2:
        return Vec2(self.x, self.y)

    def normal(self) -> "UnitVec2":
        """The left-hand normal, i.e. this direction rotated by +90 degrees."""
        return UnitVec2(-self.y, self.x)

    def rotated(self, angle: float) -> "UnitVec2":
        c, s = math.cos(angle), math.sin(angle)
        return UnitVec2(c * self.x - s * self.y, s * self.x + c * self.y)

    def dot(self, other: "UnitVec2") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "UnitVec2") -> float:
        return self.x * other.y - self.y * other.x

    def __neg__(self) -> "UnitVec2":
        return UnitVec2(-self.x, -self.y)

    def scaled(self, s: float) -> Vec2:
        return Vec2(self.x * s, self.y * s)


def bernstein(i: int, t: float) -> float:
    """Degree-4 Bernstein basis polynomial value at t.

    Valid for i in 0..4; t is not range-checked since the polynomials
    are defined on the whole real line.
    """
    if not 0 <= i <= 4:
        raise DomainError(f"bernstein index must be in 0..4, got {i}")
    u = 1.0 - t
    coeff = (1.0, 4.0, 6.0, 4.0, 1.0)[i]
    return coeff * u ** (4 - i) * t**i


def _de_casteljau(points: Sequence[Vec2], t: float) -> Vec2:
    u = 1.0 - t
    work = list(points)
    for level in range(len(work) - 1, 0, -1):
        for k in range(level):
            a, b = work[k], work[k + 1]
            work[k] = Vec2(u * a.x + t * b.x, u * a.y + t * b.y)
    return work[0]


@dataclass(frozen=True)
class QuarticBezier:
    """A degree-4 Bezier segment B(t), t in [0, 1], on five control points."""

    b0: Vec2
    b1: Vec2
    b2: Vec2
    b3: Vec2
    b4: Vec2

    @property
    def control_points(self) -> tuple[Vec2, Vec2, Vec2, Vec2, Vec2]:
        return (self.b0, self.b1, self.b2, self.b3, self.b4)

    @cached_property
    def diameter(self) -> float:
        """Largest pairwise distance between control points."""
        pts = self.control_points
        return max(
            (pts[i] - pts[j]).norm()
            for i in range(5)
            for j in range(i + 1, 5)
        )

    def point(self, t: float) -> Vec2:
        _check_param(t)
        return _de_casteljau(self.control_points, t)

    def d1(self, t: float) -> Vec2:
        _check_param(t)
        pts = self.control_points
        hodo = [pts[i + 1] - pts[i] for i in range(4)]
        return _de_casteljau(hodo, t) * 4.0

    def d2(self, t: float) -> Vec2:
        _check_param(t)
        pts = self.control_points
        hodo = [pts[i + 2] - 2.0 * pts[i + 1] + pts[i] for i in range(3)]
        return _de_casteljau(hodo, t) * 12.0

    def d3(self, t: float) -> Vec2:
        _check_param(t)
        pts = self.control_points
        hodo = [
            pts[i + 3] - 3.0 * pts[i + 2] + 3.0 * pts[i + 1] - pts[i]
            for i in range(2)
        ]
        return _de_casteljau(hodo, t) * 24.0


def _check_param(t: float) -> None:
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"curve parameter must lie in [0, 1], got {t!r}")


def _checked_speed(curve: QuarticBezier, d1: Vec2, t: float) -> float:
    speed = d1.norm()
    if speed <= SINGULAR_SPEED_FRACTION * curve.diameter:
        raise SingularityError(
            f"first derivative vanishes at t={t!r} "
            f"(speed {speed:.3e} vs diameter {curve.diameter:.3e})"
        )
    return speed


def curvature(curve: QuarticBezier, t: float) -> float:
    """Signed curvature at parameter t; positive bends left."""
    d1 = curve.d1(t)
    d2 = curve.d2(t)
    speed = _checked_speed(curve, d1, t)
    return d1.cross(d2) / speed**3


def curvature_derivative(curve: QuarticBezier, t: float) -> float:
    """Derivative of signed curvature with respect to t.

    Uses the closed form

        kappa'(t) = [ (B'.B') (B' x B''') - 3 (B' x B'') (B'.B'') ] / |B'|^5

    which follows from differentiating the curvature quotient; the
    B'' x B'' term of d/dt(B' x B'') drops out.
    """
    d1 = curve.d1(t)
    d2 = curve.d2(t)
    d3 = curve.d3(t)
    speed = _checked_speed(curve, d1, t)
    numerator = d1.norm_sq() * d1.cross(d3) - 3.0 * d1.cross(d2) * d1.dot(d2)
    return numerator / speed**5
