"""Construction and certification of quartic Bezier spiral segments.

A spiral segment here is a single quartic Bezier curve whose signed
curvature starts at exactly zero, grows strictly monotonically, and
ends at 1/r with zero curvature derivative, so the far end can meet a
circle of radius r with G2 continuity while the near end extends a
straight line.  The construction is closed-form: given the start point,
start tangent, turning angle theta, end radius r and a shape parameter
alpha0, the five control points follow from a fixed pair of leg-ratio
constants and two offset lengths.

The shape parameter alpha0 is capped at 8/25.  The cap is conservative:
the certificate polynomials below stay positive up to roughly 0.3260,
and alpha_min_bound() computes that root so tests can confirm the cap
sits strictly inside the provable region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConstructionError, DomainError
from .geometry import QuarticBezier, UnitVec2, Vec2, curvature, curvature_derivative
from .rootfind import find_root

__all__ = [
    "ALPHA0_MAX",
    "RHO1",
    "SpiralParams",
    "DerivedParams",
    "SpiralReport",
    "derive_params",
    "endpoint_offsets",
    "build_spiral",
    "certify_spiral",
    "alpha_min_bound",
]

# Largest admissible shape parameter.  Kept as an exact fraction.
ALPHA0_MAX = 8.0 / 25.0

# Leg ratio of the final control polygon segment.  This exact value is
# forced by the zero-second-derivative-of-curvature condition at t=0.
RHO1 = 9.0 / 14.0

# Step used for the one-sided finite-difference estimate of the second
# curvature derivative at t=0.
_FD_STEP = 1e-5


@dataclass(frozen=True)
class SpiralParams:
    """Input data for one anticlockwise spiral segment.

    theta is the tangent turning angle from start to end, r the end
    radius of curvature (the osculating circle at the end lies to the
    left of the end tangent), alpha0 the family shape parameter.
    """

    b0: Vec2
    t0: UnitVec2
    theta: float
    r: float
    alpha0: float

    def __post_init__(self) -> None:
        if not 0.0 < self.theta < 0.5 * math.pi:
            raise DomainError(
                f"theta must lie in (0, pi/2), got {self.theta!r}"
            )
        if not self.r > 0.0:
            raise DomainError(f"r must be positive, got {self.r!r}")
        _check_alpha0(self.alpha0)
        unit_defect = abs(self.t0.x**2 + self.t0.y**2 - 1.0)
        if unit_defect > 1e-12:
            raise DomainError("t0 must be a unit vector")


@dataclass(frozen=True)
class DerivedParams:
    """Constants derived from alpha0: the two leg ratios and the end-offset factor."""

    rho1: float
    rho0: float
    h: float


@dataclass(frozen=True)
class SpiralReport:
    """Numerical certificate for one curve claimed to be a spiral segment.

    kappa0/kappa1 are the endpoint curvatures, dkappa1 the curvature
    derivative at t=1, ddkappa0 a finite-difference estimate of the
    second curvature derivative at t=0.  monotone is true iff the
    sampled curvature derivative keeps a single sign on the open
    interval, and violated_inequalities lists any certificate
    polynomial that went non-positive at this alpha0.
    """

    kappa0: float
    kappa1: float
    dkappa1: float
    ddkappa0: float
    monotone: bool
    min_abs_dkappa_interior: float
    samples: int
    violated_inequalities: tuple[str, ...] = ()


def _check_alpha0(alpha0: float) -> None:
    if not 0.0 < alpha0 <= ALPHA0_MAX:
        raise DomainError(
            f"alpha0 must lie in (0, 8/25], got {alpha0!r}"
        )


def derive_params(alpha0: float) -> DerivedParams:
    """Leg ratios and offset factor for a given shape parameter.

    rho1 is constant.  rho0 and h are rational in alpha0; the forms
    below are the fully simplified ones (tests check them against the
    unsimplified originals).
    """
    _check_alpha0(alpha0)
    rho0 = 25.0 * (1.0 - alpha0) / (48.0 - 25.0 * alpha0)
    h = 7.0 * (1.0 - alpha0) / (27.0 * alpha0)
    return DerivedParams(rho1=RHO1, rho0=rho0, h=h)


def endpoint_offsets(theta: float, r: float, alpha0: float) -> tuple[float, float]:
    """Offset lengths (a, b) placing the spiral end point.

    The end point sits at b0 + a*T0 + b*T1.  Both lengths are positive
    and vanish as theta -> 0.
    """
    if not 0.0 < theta < 0.5 * math.pi:
        raise DomainError(f"theta must lie in (0, pi/2), got {theta!r}")
    if not r > 0.0:
        raise DomainError(f"r must be positive, got {r!r}")
    p = derive_params(alpha0)
    tan_t = math.tan(theta)
    sec_t = 1.0 / math.cos(theta)
    a = 4.0 * RHO1**2 * r * p.h**2 * sec_t * tan_t / (3.0 * alpha0 * (1.0 - p.rho0))
    b = r * p.h * tan_t
    return a, b


def control_points_from_frame(
    b0: Vec2,
    t_start: UnitVec2,
    t_end: UnitVec2,
    a: float,
    b: float,
    alpha0: float,
) -> tuple[Vec2, Vec2, Vec2, Vec2, Vec2]:
    """Assemble the five control points from a start/end tangent frame.

    The start-side displacement a is split along t_start in fractions
    rho0 : (1-rho0)(1-alpha0) : (1-rho0)alpha0 and the end-side
    displacement b along t_end in fractions (1-rho1) : rho1, with the
    first two legs collinear (that collinearity is what pins the start
    curvature to zero).  Callers pass t_end = t_start rotated by +theta
    for an anticlockwise segment or by -theta for its mirror image.
    """
    p = derive_params(alpha0)
    b1 = b0 + t_start.scaled(p.rho0 * a)
    b2 = b1 + t_start.scaled((1.0 - p.rho0) * (1.0 - alpha0) * a)
    b3 = b2 + t_start.scaled((1.0 - p.rho0) * alpha0 * a) + t_end.scaled((1.0 - RHO1) * b)
    b4 = b3 + t_end.scaled(RHO1 * b)
    return (b0, b1, b2, b3, b4)


def build_spiral(params: SpiralParams) -> QuarticBezier:
    """Construct the anticlockwise spiral segment for the given parameters.

    The result turns left through params.theta; its curvature runs from
    0 at t=0 to 1/params.r at t=1.  A handful of cheap residual checks
    run after assembly and raise ConstructionError if the control
    points fail to reproduce the claimed endpoint behaviour.
    """
    t1 = params.t0.rotated(params.theta)
    a, b = endpoint_offsets(params.theta, params.r, params.alpha0)
    curve = QuarticBezier(
        *control_points_from_frame(params.b0, params.t0, t1, a, b, params.alpha0)
    )
    _verify_construction(curve, params, a, b, t1)
    return curve


def _verify_construction(
    curve: QuarticBezier,
    params: SpiralParams,
    a: float,
    b: float,
    t1: UnitVec2,
) -> None:
    # Residual guards, padded a little beyond certification tolerances
    # to stay quiet under far-from-origin cancellation; real assembly
    # bugs overshoot these by orders of magnitude.
    r = params.r
    chord = curve.b4 - curve.b0
    target = params.t0.scaled(a) + t1.scaled(b)
    identity_tol = 1e-12 * (chord.norm() + params.b0.norm())
    if (chord - target).norm() > identity_tol:
        raise ConstructionError(
            "end point does not match its offset decomposition"
        )
    position_noise = (
        1e3 * 2.22e-16 * params.b0.norm() / max(curve.diameter, 1e-300)
    )
    k0 = curvature(curve, 0.0)
    if abs(k0) > 1e-8 / r + position_noise / r:
        raise ConstructionError(f"start curvature {k0!r} is not zero")
    k1 = curvature(curve, 1.0)
    if abs(k1 - 1.0 / r) > 1e-6 / r + position_noise / r:
        raise ConstructionError(
            f"end curvature {k1!r} misses target {1.0 / r!r}"
        )
    dk1 = curvature_derivative(curve, 1.0)
    if abs(dk1) > 1e-6 * max(1.0, 1.0 / r):
        raise ConstructionError(
            f"curvature derivative at the end is {dk1!r}, expected 0"
        )


def _sample_grid(samples: int) -> list[float]:
    # Uniform coverage plus cosine-clustered nodes that crowd both
    # endpoints, where the spiral conditions live.
    if samples < 2:
        raise DomainError("need at least 2 samples")
    grid = [i / (samples - 1) for i in range(samples)]
    grid.extend(0.5 * (1.0 - math.cos(math.pi * k / 64.0)) for k in range(65))
    grid = sorted(set(grid))
    return grid


def certify_spiral(
    curve: QuarticBezier, params: SpiralParams, samples: int = 1001
) -> SpiralReport:
    """Sample-based spiral certificate for a built curve.

    Checks the endpoint conditions, sign-constancy of the curvature
    derivative on the interior, and the alpha0 positivity conditions of
    the curvature-derivative numerator certificate.  The second
    curvature derivative at t=0 is estimated with a one-sided
    second-order finite difference of curvature_derivative.
    """
    grid = _sample_grid(samples)
    h = _FD_STEP
    dk0 = curvature_derivative(curve, 0.0)
    ddk0 = (
        -3.0 * dk0
        + 4.0 * curvature_derivative(curve, h)
        - curvature_derivative(curve, 2.0 * h)
    ) / (2.0 * h)

    interior = [curvature_derivative(curve, t) for t in grid if 0.0 < t < 1.0]
    positive = sum(1 for v in interior if v > 0.0)
    negative = sum(1 for v in interior if v < 0.0)
    monotone = (positive == len(interior)) or (negative == len(interior))

    return SpiralReport(
        kappa0=curvature(curve, 0.0),
        kappa1=curvature(curve, 1.0),
        dkappa1=curvature_derivative(curve, 1.0),
        ddkappa0=ddk0,
        monotone=monotone,
        min_abs_dkappa_interior=min(abs(v) for v in interior),
        samples=len(grid),
        violated_inequalities=violated_inequalities(params.alpha0),
    )


# ---------------------------------------------------------------------------
# Positivity certificate for the curvature-derivative numerator.
#
# The curvature derivative of a constructed segment factors into a
# positive envelope times a degree-9 polynomial whose coefficients P_i
# are products of fixed constants and the polynomials H_2..H_8 below.
# Each H_i splits into an alpha0-only part and a tan^2(theta)
# coefficient; both stay positive for alpha0 below the bound computed
# by alpha_min_bound(), which is what makes every constructed segment a
# spiral rather than just a G2 blend.
# ---------------------------------------------------------------------------

# (label, ascending coefficients); each polynomial must stay positive.
_CERTIFICATE_POLYS: tuple[tuple[str, tuple[float, ...]], ...] = (
    ("h2 alpha part", (3836.0, -8822.0, 2111.0)),
    ("h2 tan2 part", (1918.0, -2493.0)),
    ("h3 alpha part", (7674.0, -18823.0, -351.0)),
    ("h3 tan2 part", (7674.0, -11149.0)),
    ("h4 alpha part", (38916.0, -154084.0, 161956.0, -74824.0, -43839.0)),
    ("h4 tan2 part", (9729.0, -19063.0, 6459.0)),
    ("h5 alpha part", (6348.0, -11776.0, -3760.0, -31304.0, -40583.0)),
    ("h5 tan2 part", (69.0, 10.0, -150.0)),
    ("h6 alpha part", (276.0, -373.0, -900.0, -1338.0)),
    ("h6 tan2 part", (1380.0, -1373.0)),
    ("h7 alpha part", (230.0, -614.0, -514.0, 783.0)),
    ("h7 tan2 part", (13.0, -15.0)),
    ("h8 alpha part", (46.0, -176.0, 107.0)),
)


def _eval_poly(coeffs: tuple[float, ...], x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def violated_inequalities(alpha0: float) -> tuple[str, ...]:
    """Labels of certificate polynomials that are not positive at alpha0."""
    return tuple(
        name
        for name, coeffs in _CERTIFICATE_POLYS
        if not _eval_poly(coeffs, alpha0) > 0.0
    )


def alpha_min_bound() -> float:
    """Smallest positive root of any certificate polynomial.

    All certificate polynomials are positive at alpha0 = 0, so this is
    the supremum of the provably-safe alpha0 range.  It exceeds the
    ALPHA0_MAX cap (tests assert this), which is why the cap is an
    exact, slightly conservative fraction.
    """
    best = math.inf
    steps = 4096
    for _, coeffs in _CERTIFICATE_POLYS:
        prev_x = 1e-9
        prev_f = _eval_poly(coeffs, prev_x)
        for k in range(1, steps + 1):
            x = 1e-9 + (1.0 - 2e-9) * k / steps
            f = _eval_poly(coeffs, x)
            if f == 0.0 or (f > 0.0) != (prev_f > 0.0):
                root = find_root(
                    lambda v, c=coeffs: _eval_poly(c, v), prev_x, x
                )
                best = min(best, root)
                break
            prev_x, prev_f = x, f
    if not math.isfinite(best):
        raise ConstructionError("no certificate polynomial root found in (0, 1)")
    return best


# Full H polynomials including the tan^2(theta) terms, plus the P, M, N
# evaluators of the curvature-derivative factorization.  These back the
# dual-route curvature-derivative test; certification above only needs
# the alpha0 positivity conditions.

def poly_h(i: int, alpha0: float, tan2: float) -> float:
    a = alpha0
    am1 = a - 1.0
    if i == 2:
        return (3836.0 - 8822.0 * a + 2111.0 * a * a) + 2.0 * am1 * (
            -1918.0 + 2493.0 * a
        ) * tan2
    if i == 3:
        return (7674.0 - 18823.0 * a - 351.0 * a * a) + am1 * (
            -7674.0 + 11149.0 * a
        ) * tan2
    if i == 4:
        const = 38916.0 - 154084.0 * a + 161956.0 * a**2 - 74824.0 * a**3 - 43839.0 * a**4
        return const + 4.0 * am1 * am1 * (9729.0 - 19063.0 * a + 6459.0 * a * a) * tan2
    if i == 5:
        const = 6348.0 - 11776.0 * a - 3760.0 * a**2 - 31304.0 * a**3 - 40583.0 * a**4
        return const + 92.0 * am1 * am1 * (69.0 + 10.0 * a - 150.0 * a * a) * tan2
    if i == 6:
        return 5.0 * (276.0 - 373.0 * a - 900.0 * a**2 - 1338.0 * a**3) + am1 * am1 * (
            1380.0 - 1373.0 * a
        ) * tan2
    if i == 7:
        return 5.0 * (230.0 - 614.0 * a - 514.0 * a**2 + 783.0 * a**3) + 46.0 * am1 * am1 * (
            13.0 - 15.0 * a
        ) * tan2
    if i == 8:
        return 5.0 * (46.0 - 176.0 * a + 107.0 * a * a) + 46.0 * am1 * am1 * tan2
    raise DomainError(f"poly_h index must be in 2..8, got {i}")


def poly_p(i: int, alpha0: float, theta: float) -> float:
    a = alpha0
    am1 = a - 1.0
    sec2 = 1.0 / math.cos(theta) ** 2
    tan2 = math.tan(theta) ** 2
    if i == 0:
        return -312500.0 * sec2 * am1**5
    if i == 1:
        return -2437500.0 * sec2 * am1**5
    if i == 2:
        return -3000.0 * am1**3 * poly_h(2, a, tan2)
    if i == 3:
        return -4140.0 * am1**3 * poly_h(3, a, tan2)
    if i == 4:
        return -1035.0 * am1 * poly_h(4, a, tan2)
    if i == 5:
        return -3105.0 * am1 * poly_h(5, a, tan2)
    if i == 6:
        return -28566.0 * a * am1 * poly_h(6, a, tan2)
    if i == 7:
        return 42849.0 * a * a * poly_h(7, a, tan2)
    if i == 8:
        return 12854.0 * a**3 * poly_h(8, a, tan2)
    if i == 9:
        return 0.0
    raise DomainError(f"poly_p index must be in 0..9, got {i}")


def poly_m(t: float, alpha0: float) -> float:
    a = alpha0
    base = 25.0 + 19.0 * t - 44.0 * t * t + (-25.0 - 19.0 * t + 113.0 * t * t) * a
    return 4.0 * (t - 1.0) ** 2 * (1.0 - a) * base * base


def poly_n(t: float, alpha0: float) -> float:
    a = alpha0
    base = (
        2.0 * (t - 1.0) ** 2 * (25.0 + 44.0 * t)
        + (-100.0 + 24.0 * t + 390.0 * t**2 - 314.0 * t**3) * a
        + (50.0 - 12.0 * t + 81.0 * t**2 + 88.0 * t**3) * a * a
    )
    return base * base
