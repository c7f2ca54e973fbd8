"""Solvers for G2 transition problems between points and circles.

Three planar problems are covered, all solved by the same recipe:
reduce the geometry to a scalar feasibility function q(theta) whose
sign change on (0, pi/2) locates the admissible turning angle, find the
root with a bracketed solver, then recover the tangent frame at the
junction and assemble one or two spiral segments.

Conventions.  Solvers take circle radii as magnitudes; the bending
sense of each contact is implied by the problem kind.  The "left"
branch is the solution produced by the direct anticlockwise frame
recovery; "right" is its mirror image across the natural symmetry line
of the configuration (point to center for the single-spiral problem,
center to center otherwise).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable, Iterable

from .errors import (
    BracketingError,
    ConstructionError,
    ConvergenceError,
    DomainError,
    InfeasibleError,
)
from .geometry import (
    QuarticBezier,
    UnitVec2,
    Vec2,
    curvature,
    curvature_derivative,
)
from .rootfind import find_root
from .spiral import (
    SpiralParams,
    SpiralReport,
    build_spiral,
    certify_spiral,
    derive_params,
    endpoint_offsets,
    RHO1,
)

if TYPE_CHECKING:
    from .scene_io import Scene

__all__ = [
    "Circle",
    "TransitionFrame",
    "TransitionResult",
    "TransitionResiduals",
    "ContactResidual",
    "SweepOutcome",
    "q_point_circle",
    "f1_f2",
    "q_s_shape",
    "q_c_shape",
    "solve_point_circle",
    "solve_s_shape",
    "solve_c_shape",
    "sweep_family",
    "find_root",
]

# Root search interval for the turning angle.  The feasibility
# functions change sign strictly inside (0, pi/2); the tiny margins
# keep tan(theta) finite.
_THETA_LO = 1e-6
_THETA_HI = 0.5 * math.pi - 1e-6
_BRACKET_STEPS = 64


@dataclass(frozen=True)
class Circle:
    """A circle given by center and radius magnitude."""

    center: Vec2
    radius: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.radius) and self.radius != 0.0):
            raise DomainError(f"circle radius must be nonzero, got {self.radius!r}")


@dataclass(frozen=True)
class TransitionFrame:
    """Junction frame shared by the spiral pair.

    t0/t1 are the start and end tangents of the first spiral; f0/f1
    those of the second (None for the single-spiral problem).  f0 is
    always -t0: the two spirals leave the junction in opposite
    directions.
    """

    b0: Vec2
    t0: UnitVec2
    t1: UnitVec2
    f0: UnitVec2 | None
    f1: UnitVec2 | None
    theta: float
    alpha0: float


@dataclass(frozen=True)
class ContactResidual:
    """Deviations at one circle contact: distance from the circle,
    tangent-radial alignment, and signed curvature mismatch."""

    position: float
    tangent: float
    curvature: float


@dataclass(frozen=True)
class TransitionResiduals:
    junction_gap: float
    junction_tangent_dot: float | None
    junction_curvatures: tuple[float, ...]
    contacts: tuple[ContactResidual, ...]


@dataclass(frozen=True)
class TransitionResult:
    frame: TransitionFrame
    spiral0: QuarticBezier
    spiral1: QuarticBezier | None
    residuals: TransitionResiduals
    reports: tuple[SpiralReport, ...]

    @property
    def spirals(self) -> tuple[QuarticBezier, ...]:
        if self.spiral1 is None:
            return (self.spiral0,)
        return (self.spiral0, self.spiral1)


@dataclass(frozen=True)
class SweepOutcome:
    """One grid point of a parameter sweep: either a result or the
    reason this alpha0 admits no transition."""

    alpha0: float
    result: TransitionResult | None
    failure: str | None

    @property
    def feasible(self) -> bool:
        return self.result is not None


def _check_branch(branch: str) -> None:
    if branch not in ("left", "right"):
        raise DomainError(f"branch must be 'left' or 'right', got {branch!r}")


def _check_theta_open(theta: float) -> None:
    if not 0.0 < theta < 0.5 * math.pi:
        raise DomainError(f"theta must lie in (0, pi/2), got {theta!r}")


# ---------------------------------------------------------------------------
# Feasibility functions
# ---------------------------------------------------------------------------

def q_point_circle(theta: float, alpha0: float, ell: float, r: float) -> float:
    """Feasibility value for a point at distance ell from a circle of
    radius r.  Zero iff a spiral with turning angle theta makes G2
    contact; positive roots exist when ell > r."""
    _check_theta_open(theta)
    if ell < 0.0:
        raise DomainError(f"ell must be nonnegative, got {ell!r}")
    if not r > 0.0:
        raise DomainError(f"r must be positive, got {r!r}")
    a, b = endpoint_offsets(theta, r, alpha0)
    c, s = math.cos(theta), math.sin(theta)
    return ell * ell - (a * a + b * b + r * r + 2.0 * a * (b * c - r * s))


def f1_f2(theta: float, alpha0: float) -> tuple[float, float]:
    """Scale-free frame coefficients of the two-circle problems.

    For a spiral of end radius r the center offset decomposes with
    coefficients r*f1 along the junction normal and r*f2 along the
    tangent; both grow without bound as theta approaches pi/2.
    """
    _check_theta_open(theta)
    p = derive_params(alpha0)
    c, s = math.cos(theta), math.sin(theta)
    tan_t = s / c
    f1 = c + p.h * s * tan_t
    # a/r, the tangential endpoint offset per unit radius
    k_a = 4.0 * RHO1**2 * p.h**2 * tan_t / (c * 3.0 * alpha0 * (1.0 - p.rho0))
    f2 = (p.h - 1.0) * s + k_a
    return f1, f2


def q_s_shape(theta: float, alpha0: float, r0: float, r1: float, n: float) -> float:
    """Feasibility value for an opposite-bending pair between circles of
    radii r0, r1 (both positive) with center distance n."""
    if not (r0 > 0.0 and r1 > 0.0):
        raise DomainError(
            f"s-shape radii must both be positive, got r0={r0!r}, r1={r1!r}"
        )
    if not n > 0.0:
        raise DomainError(f"center distance must be positive, got {n!r}")
    f1, f2 = f1_f2(theta, alpha0)
    return (r1 + r0) ** 2 * (f1 * f1 + f2 * f2) - n * n


def q_c_shape(theta: float, alpha0: float, r0: float, r1: float, n: float) -> float:
    """Feasibility value for a same-bending pair; r0 > 0, r1 < 0 carries
    the opposite contact orientation of the second circle.

    The center difference decomposes as -(r0 - r1) f2 along the
    junction tangent and (r0 + r1) f1 along the normal (signed radii),
    so its squared norm pairs f2 with the radius sum of magnitudes and
    f1 with their difference.
    """
    if not r0 > 0.0:
        raise DomainError(f"c-shape needs r0 > 0, got {r0!r}")
    if not r1 < 0.0:
        raise DomainError(f"c-shape needs r1 < 0, got {r1!r}")
    if not n > 0.0:
        raise DomainError(f"center distance must be positive, got {n!r}")
    f1, f2 = f1_f2(theta, alpha0)
    return f2 * f2 * (r1 - r0) ** 2 + f1 * f1 * (r1 + r0) ** 2 - n * n


def _first_bracket(
    q: Callable[[float], float],
    lo: float = _THETA_LO,
    hi: float = _THETA_HI,
    steps: int = _BRACKET_STEPS,
) -> tuple[float, float]:
    # Geometric subdivision crowds samples toward theta = 0, where the
    # feasibility functions vary slowly; first sign change wins.
    ratio = (hi / lo) ** (1.0 / steps)
    prev_x = lo
    prev_q = q(lo)
    if prev_q == 0.0:
        return (lo, lo)
    x = lo
    for _ in range(steps):
        x *= ratio
        qx = q(x)
        if qx == 0.0 or (qx > 0.0) != (prev_q > 0.0):
            return (prev_x, x)
        prev_x, prev_q = x, qx
    raise BracketingError(
        "feasibility function has no sign change on (0, pi/2)"
    )


# ---------------------------------------------------------------------------
# Frame recovery helpers
# ---------------------------------------------------------------------------

def _rotation_solve(c_t: float, c_n: float, rhs: Vec2) -> UnitVec2:
    # Solve rhs = c_t*u + c_n*perp(u) for the unit vector u.  The
    # matrix c_t*I + c_n*J is a rotation-scaling, inverted in closed
    # form; its determinant c_t^2 + c_n^2 equals ||rhs||^2 at a root of
    # the feasibility equation.
    det = c_t * c_t + c_n * c_n
    if det <= 0.0 or not math.isfinite(det):
        raise ConstructionError("degenerate frame recovery system")
    u = Vec2(
        (c_t * rhs.x + c_n * rhs.y) / det,
        (c_t * rhs.y - c_n * rhs.x) / det,
    )
    return UnitVec2.from_vec(u)


def _reflect_vec(v: Vec2, axis: UnitVec2) -> Vec2:
    d = v.x * axis.x + v.y * axis.y
    return Vec2(2.0 * d * axis.x - v.x, 2.0 * d * axis.y - v.y)


def _reflect_unit(u: UnitVec2, axis: UnitVec2) -> UnitVec2:
    r = _reflect_vec(Vec2(u.x, u.y), axis)
    return UnitVec2(r.x, r.y)


def _reflect_point(p: Vec2, origin: Vec2, axis: UnitVec2) -> Vec2:
    return origin + _reflect_vec(p - origin, axis)


def _reflect_curve(curve: QuarticBezier, origin: Vec2, axis: UnitVec2) -> QuarticBezier:
    return QuarticBezier(
        *(_reflect_point(p, origin, axis) for p in curve.control_points)
    )


def _mirror_spiral(
    b0: Vec2, f0: UnitVec2, theta: float, r: float, alpha0: float
) -> QuarticBezier:
    # Clockwise sibling of the canonical segment: build the
    # anticlockwise one along f0, then flip it across its start
    # tangent line.  End tangent becomes f0 rotated by -theta and the
    # end curvature -1/r.
    left = build_spiral(SpiralParams(b0=b0, t0=f0, theta=theta, r=r, alpha0=alpha0))
    return _reflect_curve(left, b0, f0)


def _unit_tangent(curve: QuarticBezier, t: float) -> UnitVec2:
    return UnitVec2.from_vec(curve.d1(t))


def _contact_residual(
    curve: QuarticBezier, circle_center: Vec2, radius_magnitude: float, kappa_target: float
) -> ContactResidual:
    end = curve.point(1.0)
    radial = end - circle_center
    tangent = _unit_tangent(curve, 1.0)
    radial_norm = radial.norm()
    position = abs(radial_norm - radius_magnitude)
    if radial_norm > 0.0:
        alignment = abs(tangent.dot(radial) / radial_norm)
    else:
        alignment = 1.0
    return ContactResidual(
        position=position,
        tangent=alignment,
        curvature=abs(curvature(curve, 1.0) - kappa_target),
    )


def _spiral_report(curve: QuarticBezier, theta: float, r: float, alpha0: float) -> SpiralReport:
    params = SpiralParams(
        b0=curve.b0,
        t0=_unit_tangent(curve, 0.0),
        theta=theta,
        r=r,
        alpha0=alpha0,
    )
    return certify_spiral(curve, params)


# ---------------------------------------------------------------------------
# Solvers
# ---------------------------------------------------------------------------

def solve_point_circle(
    b0: Vec2, circle: Circle, alpha0: float, branch: str = "left"
) -> TransitionResult:
    """Join a point to a circle with a single spiral making G2 contact.

    Feasible iff the point lies strictly outside the circle.  The
    returned result has spiral1 = None and a single contact residual.
    """
    _check_branch(branch)
    if not circle.radius > 0.0:
        raise DomainError(
            f"solver takes the radius as a magnitude, got {circle.radius!r}"
        )
    r = circle.radius
    g0 = circle.center - b0
    ell = g0.norm()
    if ell <= r:
        raise InfeasibleError(
            "point must lie strictly outside the circle: needs "
            f"||center - point|| > r, got distance {ell:.9g} with r {r:.9g}"
        )

    def q(theta: float) -> float:
        return q_point_circle(theta, alpha0, ell, r)

    lo, hi = _first_bracket(q)
    theta = find_root(q, lo, hi)

    a, b = endpoint_offsets(theta, r, alpha0)
    c, s = math.cos(theta), math.sin(theta)
    c_t = a + b * c - r * s
    c_n = b * s + r * c
    t0 = _rotation_solve(c_t, c_n, g0)
    t1 = t0.rotated(theta)
    curve = build_spiral(SpiralParams(b0=b0, t0=t0, theta=theta, r=r, alpha0=alpha0))
    kappa_target = 1.0 / r

    if branch == "right":
        axis = UnitVec2.from_vec(g0)
        t0 = _reflect_unit(t0, axis)
        t1 = _reflect_unit(t1, axis)
        curve = _reflect_curve(curve, b0, axis)
        kappa_target = -kappa_target

    frame = TransitionFrame(
        b0=b0, t0=t0, t1=t1, f0=None, f1=None, theta=theta, alpha0=alpha0
    )
    residuals = TransitionResiduals(
        junction_gap=(curve.b0 - b0).norm(),
        junction_tangent_dot=None,
        junction_curvatures=(curvature(curve, 0.0),),
        contacts=(
            _contact_residual(curve, circle.center, r, kappa_target),
        ),
    )
    report = _spiral_report(curve, theta, r, alpha0)
    return TransitionResult(
        frame=frame,
        spiral0=curve,
        spiral1=None,
        residuals=residuals,
        reports=(report,),
    )


def _pair_residuals(
    spiral0: QuarticBezier,
    spiral1: QuarticBezier,
    circle0: Circle,
    circle1: Circle,
    kappa_targets: tuple[float, float],
) -> TransitionResiduals:
    gap = (spiral0.b0 - spiral1.b0).norm()
    dot = _unit_tangent(spiral0, 0.0).dot(_unit_tangent(spiral1, 0.0).vec())
    return TransitionResiduals(
        junction_gap=gap,
        junction_tangent_dot=dot,
        junction_curvatures=(curvature(spiral0, 0.0), curvature(spiral1, 0.0)),
        contacts=(
            _contact_residual(spiral0, circle0.center, abs(circle0.radius), kappa_targets[0]),
            _contact_residual(spiral1, circle1.center, abs(circle1.radius), kappa_targets[1]),
        ),
    )


def _require_magnitudes(circle0: Circle, circle1: Circle, kind: str) -> None:
    if not (circle0.radius > 0.0 and circle1.radius > 0.0):
        raise DomainError(
            f"{kind} solver takes radii as magnitudes, got "
            f"{circle0.radius!r} and {circle1.radius!r}"
        )


def solve_s_shape(
    circle0: Circle, circle1: Circle, alpha0: float, branch: str = "left"
) -> TransitionResult:
    """Join two circles bending in opposite senses across the junction.

    The junction point divides the center segment in the ratio of the
    radii and carries zero curvature from both sides.  Feasible iff
    r0 + r1 < ||C1 - C0|| strictly.
    """
    _check_branch(branch)
    _require_magnitudes(circle0, circle1, "s-shape")
    r0, r1 = circle0.radius, circle1.radius
    w = circle1.center - circle0.center
    n = w.norm()
    if r0 + r1 >= n:
        raise InfeasibleError(
            "circles must be strictly separated: needs r0 + r1 < ||C1 - C0||, "
            f"got r0 + r1 = {r0 + r1:.9g} with center distance {n:.9g}"
        )
    b0 = (1.0 / (r0 + r1)) * (r0 * circle1.center + r1 * circle0.center)

    def q(theta: float) -> float:
        return q_s_shape(theta, alpha0, r0, r1, n)

    lo, hi = _first_bracket(q)
    theta = find_root(q, lo, hi)

    a0, b0_off = endpoint_offsets(theta, r0, alpha0)
    a1, b1_off = endpoint_offsets(theta, r1, alpha0)
    c, s = math.cos(theta), math.sin(theta)
    # Center difference in the junction frame; both coefficients carry
    # the radius sum because the offsets scale linearly with radius.
    c_t = -((a0 + a1) + (b0_off + b1_off) * c - (r0 + r1) * s)
    c_n = -((b0_off + b1_off) * s + (r0 + r1) * c)
    t0 = _rotation_solve(c_t, c_n, w)
    t1 = t0.rotated(theta)
    f0 = -t0
    f1 = -t1

    spiral0 = build_spiral(SpiralParams(b0=b0, t0=t0, theta=theta, r=r0, alpha0=alpha0))
    spiral1 = build_spiral(SpiralParams(b0=b0, t0=f0, theta=theta, r=r1, alpha0=alpha0))
    kappa_targets = (1.0 / r0, 1.0 / r1)

    if branch == "right":
        axis = UnitVec2.from_vec(w)
        t0 = _reflect_unit(t0, axis)
        t1 = _reflect_unit(t1, axis)
        f0 = _reflect_unit(f0, axis)
        f1 = _reflect_unit(f1, axis)
        b0 = _reflect_point(b0, circle0.center, axis)
        spiral0 = _reflect_curve(spiral0, circle0.center, axis)
        spiral1 = _reflect_curve(spiral1, circle0.center, axis)
        kappa_targets = (-kappa_targets[0], -kappa_targets[1])

    frame = TransitionFrame(
        b0=b0, t0=t0, t1=t1, f0=f0, f1=f1, theta=theta, alpha0=alpha0
    )
    residuals = _pair_residuals(spiral0, spiral1, circle0, circle1, kappa_targets)
    reports = (
        _spiral_report(spiral0, theta, r0, alpha0),
        _spiral_report(spiral1, theta, r1, alpha0),
    )
    return TransitionResult(
        frame=frame,
        spiral0=spiral0,
        spiral1=spiral1,
        residuals=residuals,
        reports=reports,
    )


def solve_c_shape(
    circle0: Circle, circle1: Circle, alpha0: float, branch: str = "left"
) -> TransitionResult:
    """Join two circles bending in the same visual sense.

    The second contact reverses orientation, so the junction point sits
    off the center line on the locus of points whose distances to the
    centers stay in the ratio r0 : r1.  Feasible iff
    r0 + r1 < ||C1 - C0|| strictly (radius magnitudes).
    """
    _check_branch(branch)
    _require_magnitudes(circle0, circle1, "c-shape")
    r0 = circle0.radius
    r1_mag = circle1.radius
    r1 = -r1_mag
    w = circle1.center - circle0.center
    n = w.norm()
    if r0 + r1_mag >= n:
        raise InfeasibleError(
            "circles must be strictly separated: needs |r0| + |r1| < ||C1 - C0||, "
            f"got |r0| + |r1| = {r0 + r1_mag:.9g} with center distance {n:.9g}"
        )

    def q(theta: float) -> float:
        return q_c_shape(theta, alpha0, r0, r1, n)

    lo, hi = _first_bracket(q)
    theta = find_root(q, lo, hi)

    f1v, f2v = f1_f2(theta, alpha0)
    envelope = math.hypot(f1v, f2v)
    ell0 = r0 * envelope
    ell1 = r1_mag * envelope

    # Junction frame from the center difference: the tangent component
    # carries the radius sum of magnitudes, the normal component their
    # difference.
    c_t = -(r0 + r1_mag) * f2v
    c_n = (r1_mag - r0) * f1v
    t0 = _rotation_solve(c_t, c_n, w)
    n0 = t0.normal()

    a0, b0_off = endpoint_offsets(theta, r0, alpha0)
    c, s = math.cos(theta), math.sin(theta)
    g0_pred = (
        t0.scaled(a0 + b0_off * c - r0 * s) + n0.scaled(b0_off * s + r0 * c)
    )
    b0_pred = circle0.center - g0_pred

    b0 = _intersect_circles(circle0.center, ell0, circle1.center, ell1, b0_pred, n)

    t1 = t0.rotated(theta)
    f0 = -t0
    f1 = f0.rotated(-theta)

    spiral0 = build_spiral(SpiralParams(b0=b0, t0=t0, theta=theta, r=r0, alpha0=alpha0))
    spiral1 = _mirror_spiral(b0, f0, theta, r1_mag, alpha0)
    kappa_targets = (1.0 / r0, -1.0 / r1_mag)

    if branch == "right":
        axis = UnitVec2.from_vec(w)
        t0 = _reflect_unit(t0, axis)
        t1 = _reflect_unit(t1, axis)
        f0 = _reflect_unit(f0, axis)
        f1 = _reflect_unit(f1, axis)
        b0 = _reflect_point(b0, circle0.center, axis)
        spiral0 = _reflect_curve(spiral0, circle0.center, axis)
        spiral1 = _reflect_curve(spiral1, circle0.center, axis)
        kappa_targets = (-kappa_targets[0], -kappa_targets[1])

    frame = TransitionFrame(
        b0=b0, t0=t0, t1=t1, f0=f0, f1=f1, theta=theta, alpha0=alpha0
    )
    residuals = _pair_residuals(spiral0, spiral1, circle0, circle1, kappa_targets)
    reports = (
        _spiral_report(spiral0, theta, r0, alpha0),
        _spiral_report(spiral1, theta, r1_mag, alpha0),
    )
    return TransitionResult(
        frame=frame,
        spiral0=spiral0,
        spiral1=spiral1,
        residuals=residuals,
        reports=reports,
    )


def _intersect_circles(
    c0: Vec2, ell0: float, c1: Vec2, ell1: float, prefer: Vec2, n: float
) -> Vec2:
    # Intersection of the two distance circles around the centers; the
    # candidate nearer the frame prediction wins.  At a feasibility
    # root the circles always meet, so a miss signals numerical
    # breakdown rather than bad input.
    u = UnitVec2.from_vec(c1 - c0)
    x = (n * n + ell0 * ell0 - ell1 * ell1) / (2.0 * n)
    y_sq = ell0 * ell0 - x * x
    scale = max(n, ell0, ell1)
    if y_sq < -1e-9 * scale * scale:
        raise ConstructionError(
            "distance circles around the centers do not intersect; "
            "frame recovery is numerically inconsistent"
        )
    y = math.sqrt(max(y_sq, 0.0))
    base = c0 + u.scaled(x)
    side = u.normal().scaled(y)
    cand_a = base + side
    cand_b = base - side
    chosen = cand_a if (cand_a - prefer).norm() <= (cand_b - prefer).norm() else cand_b
    if (chosen - prefer).norm() > 1e-8 * scale:
        raise ConstructionError(
            "junction point from circle intersection disagrees with the "
            "frame prediction; numerical inconsistency"
        )
    return chosen


# ---------------------------------------------------------------------------
# Scene-level sweep
# ---------------------------------------------------------------------------

def solve_scene(scene: "Scene", alpha0: float) -> TransitionResult:
    """Dispatch one scene at one alpha0 to the matching solver."""
    if scene.kind == "point_circle":
        assert scene.point is not None
        return solve_point_circle(scene.point, scene.circles[0], alpha0, scene.branch)
    if scene.kind == "s_shape":
        return solve_s_shape(scene.circles[0], scene.circles[1], alpha0, scene.branch)
    if scene.kind == "c_shape":
        return solve_c_shape(scene.circles[0], scene.circles[1], alpha0, scene.branch)
    raise DomainError(f"unknown scene kind {scene.kind!r}")


def sweep_family(
    scene: "Scene", alpha0_grid: Iterable[float] | None = None
) -> list[SweepOutcome]:
    """Solve the scene over a grid of alpha0 values.

    Per-point infeasibility (or failed bracketing) is recorded in the
    outcome rather than raised, so one bad grid point never hides the
    rest of the family.
    """
    if alpha0_grid is None:
        grid = list(scene.alpha0_values())
    else:
        grid = [float(v) for v in alpha0_grid]
    outcomes: list[SweepOutcome] = []
    for value in grid:
        try:
            result = solve_scene(scene, value)
        except (InfeasibleError, BracketingError, ConvergenceError, DomainError) as exc:
            outcomes.append(SweepOutcome(alpha0=value, result=None, failure=str(exc)))
        else:
            outcomes.append(SweepOutcome(alpha0=value, result=result, failure=None))
    return outcomes
