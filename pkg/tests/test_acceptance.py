"""End-to-end acceptance checks.

Each test covers one headline requirement and prints a single
``[PASS]``/``[FAIL]`` verdict line (visible with ``pytest -s`` or on
failure) before asserting at the stated tolerance.
"""

import math
import random
import time
from contextlib import contextmanager

from conftest import random_quartic
from spiralkit import (
    ALPHA0_MAX,
    Circle,
    SpiralParams,
    UnitVec2,
    Vec2,
    alpha_min_bound,
    build_spiral,
    certify_spiral,
    curvature,
    curvature_derivative,
    endpoint_offsets,
    solve_c_shape,
    solve_point_circle,
    solve_s_shape,
)
from spiralkit.errors import InfeasibleError

ALPHA_GRID = [0.04 * i for i in range(1, 9)]
THETA_GRID = [0.1 + 0.2 * j for j in range(8)]
RADIUS_GRID = [0.5, 2.0, 10.0]


@contextmanager
def criterion(label: str):
    try:
        yield
    except BaseException:
        print(f"[FAIL] {label}", flush=True)
        raise
    print(f"[PASS] {label}", flush=True)


def test_point_circle_reference_case():
    with criterion("point-to-circle reference solve"):
        start = time.perf_counter()
        result = solve_point_circle(
            Vec2(0.0, 0.0), Circle(Vec2(13.0, math.sqrt(231.0)), 5.0), alpha0=0.32
        )
        elapsed = time.perf_counter() - start
        frame = result.frame
        assert abs(frame.theta - 1.11088) <= 1e-4
        assert abs(frame.t0.x - 0.880061) <= 1e-3
        assert abs(frame.t0.y - 0.474861) <= 1e-3
        assert abs(frame.t1.x - (-0.0348843)) <= 1e-3
        assert abs(frame.t1.y - 0.999391) <= 1e-3
        assert elapsed < 1.0


def test_s_shape_reference_case():
    with criterion("s-shape reference solve"):
        result = solve_s_shape(
            Circle(Vec2(10.0, 7.0), 5.0), Circle(Vec2(0.0, 0.0), 2.0), alpha0=0.32
        )
        frame = result.frame
        assert abs(frame.b0.x - 2.857142) <= 1e-5
        assert abs(frame.b0.y - 2.0) <= 1e-5
        assert abs(frame.theta - 0.867967) <= 1e-4
        assert abs(frame.t0.x - 0.994621) <= 1e-3
        assert abs(frame.t0.y - (-0.103585)) <= 1e-3
        assert abs(frame.t1.x - 0.721939) <= 1e-3
        assert abs(frame.t1.y - 0.691957) <= 1e-3


def test_c_shape_junction_locus_and_g2():
    with criterion("c-shape junction ratio and G2 residuals"):
        c0 = Circle(Vec2(20.0, 0.0), 5.0)
        c1 = Circle(Vec2(0.0, 0.0), 2.0)
        result = solve_c_shape(c0, c1, alpha0=0.32)
        b0 = result.frame.b0
        ratio = (c0.center - b0).norm() / (c1.center - b0).norm()
        assert abs(ratio - 2.5) <= 1e-6

        scale = 20.0
        res = result.residuals
        assert res.junction_gap <= 1e-9 * scale
        assert abs(res.junction_tangent_dot - (-1.0)) <= 1e-9
        kappa_cap = 1e-6 * max(1.0 / 5.0, 1.0 / 2.0)
        assert all(abs(k) <= kappa_cap for k in res.junction_curvatures)
        for contact, r in zip(res.contacts, (5.0, 2.0)):
            assert contact.position <= 1e-9 * scale
            assert contact.tangent <= 1e-9
            assert contact.curvature <= 1e-6 / r
        for report in result.reports:
            assert report.monotone
            assert not report.violated_inequalities


def test_certification_sweep():
    with criterion("spiral certification sweep over the parameter grid"):
        start = time.perf_counter()
        total = 0
        for alpha0 in ALPHA_GRID:
            for theta in THETA_GRID:
                for r in RADIUS_GRID:
                    params = SpiralParams(
                        Vec2(0.0, 0.0), UnitVec2.from_angle(0.3), theta, r, alpha0
                    )
                    report = certify_spiral(build_spiral(params), params)
                    assert report.monotone
                    assert abs(report.kappa0) <= 1e-9 / r
                    assert abs(report.kappa1 - 1.0 / r) <= 1e-6 / r
                    assert abs(report.dkappa1) <= 1e-6
                    assert abs(report.ddkappa0) <= 1e-5
                    total += 1
        elapsed = time.perf_counter() - start
        assert total == 8 * 8 * 3
        assert elapsed < 10.0


def test_endpoint_offset_identity():
    with criterion("endpoint offset identity across the parameter grid"):
        t0 = UnitVec2.from_angle(-0.7)
        origin = Vec2(1.0, -2.0)
        for alpha0 in ALPHA_GRID:
            for theta in THETA_GRID:
                for r in RADIUS_GRID:
                    a, b = endpoint_offsets(theta, r, alpha0)
                    curve = build_spiral(SpiralParams(origin, t0, theta, r, alpha0))
                    t1 = t0.rotated(theta)
                    want = origin + t0.vec() * a + t1.vec() * b
                    assert (curve.b4 - want).norm() <= 1e-12 * (a + b)


def test_curvature_derivative_against_finite_differences():
    with criterion("curvature derivative agrees with finite differences"):
        rng = random.Random(90210)
        h = 2.5e-4
        checked = 0
        while checked < 100:
            curve = random_quartic(rng)
            diameter = max(
                (p - q).norm()
                for p in curve.control_points
                for q in curve.control_points
            )
            # reject near-singular parametrizations: a speed dip sends the
            # higher curvature derivatives, and with them the stencil's
            # truncation error, through the roof
            speeds = [curve.d1(i / 32).norm() for i in range(33)]
            if diameter < 1.0 or min(speeds) < 0.2 * diameter:
                continue
            for t in (0.25, 0.5, 0.75):
                exact = curvature_derivative(curve, t)
                stencil = (
                    curvature(curve, t - 2 * h)
                    - 8.0 * curvature(curve, t - h)
                    + 8.0 * curvature(curve, t + h)
                    - curvature(curve, t + 2 * h)
                ) / (12.0 * h)
                floor = max(abs(exact), 1.0 / diameter)
                assert abs(stencil - exact) <= 1e-6 * floor
            checked += 1


def test_feasibility_boundaries():
    with criterion("feasibility boundaries respected to one percent"):
        # point on / inside / outside the circle
        center = Vec2(0.0, 4.0)
        r = 4.0
        solve_point_circle(Vec2(0.0, 4.0 - 1.01 * r), Circle(center, r), alpha0=0.3)
        try:
            solve_point_circle(Vec2(0.0, 4.0 - 0.99 * r), Circle(center, r), alpha0=0.3)
        except InfeasibleError:
            pass
        else:
            raise AssertionError("interior point accepted")

        # opposite-bending circles: separation against the radius sum
        r0, r1 = 5.0, 2.0
        good = Circle(Vec2(1.01 * (r0 + r1), 0.0), r1)
        bad = Circle(Vec2(0.99 * (r0 + r1), 0.0), r1)
        solve_s_shape(Circle(Vec2(0.0, 0.0), r0), good, alpha0=0.3)
        try:
            solve_s_shape(Circle(Vec2(0.0, 0.0), r0), bad, alpha0=0.3)
        except InfeasibleError:
            pass
        else:
            raise AssertionError("overlapping s-shape accepted")

        # same-bending circles: same separation threshold in magnitudes
        solve_c_shape(Circle(Vec2(0.0, 0.0), r0), good, alpha0=0.3)
        try:
            solve_c_shape(Circle(Vec2(0.0, 0.0), r0), bad, alpha0=0.3)
        except InfeasibleError:
            pass
        else:
            raise AssertionError("overlapping c-shape accepted")


def test_transformation_equivalence():
    with criterion("solutions transform covariantly under similarity maps"):
        c0 = Circle(Vec2(10.0, 7.0), 5.0)
        c1 = Circle(Vec2(0.0, 0.0), 2.0)
        base = solve_s_shape(c0, c1, alpha0=0.28)
        scale = (c0.center - c1.center).norm()

        # second spiral is the first reflected through the junction and
        # rescaled by the radius ratio
        b0 = base.frame.b0
        factor = c1.radius / c0.radius
        for p, q in zip(
            base.spiral0.control_points, base.spiral1.control_points
        ):
            mapped = b0 - (p - b0) * factor
            assert (q - mapped).norm() <= 1e-9 * scale

        # rotate + scale + translate the scene and compare solutions
        angle, s = 0.83, 2.4
        shift = Vec2(-6.0, 11.0)
        cos_a, sin_a = math.cos(angle), math.sin(angle)

        def fwd(p: Vec2) -> Vec2:
            return Vec2(
                s * (cos_a * p.x - sin_a * p.y) + shift.x,
                s * (sin_a * p.x + cos_a * p.y) + shift.y,
            )

        moved = solve_s_shape(
            Circle(fwd(c0.center), s * c0.radius),
            Circle(fwd(c1.center), s * c1.radius),
            alpha0=0.28,
        )
        assert abs(moved.frame.theta - base.frame.theta) <= 1e-9
        for orig, got in zip(base.spirals, moved.spirals):
            for p, q in zip(orig.control_points, got.control_points):
                assert (q - fwd(p)).norm() <= 1e-9 * s * scale


def test_alpha_domain_bound():
    with criterion("certified alpha0 range is safely inside the proven bound"):
        bound = alpha_min_bound()
        assert 0.32 <= bound <= 0.34
        assert bound > ALPHA0_MAX
