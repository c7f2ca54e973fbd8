import json
import math
import random

import pytest

from spiralkit import QuarticBezier, Vec2
from spiralkit.scene_io import parse_scene, solve_document

EXAMPLE1_SCENE_JSON = json.dumps(
    {
        "kind": "point_circle",
        "point": [0.0, 0.0],
        "circles": [{"center": [13.0, math.sqrt(231.0)], "radius": 5.0}],
        "alpha0": 0.32,
    }
)

EXAMPLE2_SCENE_JSON = json.dumps(
    {
        "kind": "s_shape",
        "circles": [
            {"center": [10.0, 7.0], "radius": 5.0},
            {"center": [0.0, 0.0], "radius": 2.0},
        ],
        "alpha0": 0.32,
    }
)

EXAMPLE3_SCENE_JSON = json.dumps(
    {
        "kind": "c_shape",
        "circles": [
            {"center": [20.0, 0.0], "radius": 5.0},
            {"center": [0.0, 0.0], "radius": 2.0},
        ],
        "alpha0": 0.32,
    }
)


@pytest.fixture(scope="session")
def example1_scene():
    return parse_scene(EXAMPLE1_SCENE_JSON)


@pytest.fixture(scope="session")
def example2_scene():
    return parse_scene(EXAMPLE2_SCENE_JSON)


@pytest.fixture(scope="session")
def example3_scene():
    return parse_scene(EXAMPLE3_SCENE_JSON)


@pytest.fixture(scope="session")
def example1_document(example1_scene):
    return solve_document(example1_scene)


@pytest.fixture(scope="session")
def example2_document(example2_scene):
    return solve_document(example2_scene)


@pytest.fixture(scope="session")
def example3_document(example3_scene):
    return solve_document(example3_scene)


def random_quartic(rng: random.Random, span: float = 4.0) -> QuarticBezier:
    """Random control points in a box, rejecting near-degenerate nets."""
    while True:
        pts = [
            Vec2(rng.uniform(-span, span), rng.uniform(-span, span)) for _ in range(5)
        ]
        curve = QuarticBezier(*pts)
        if curve.diameter < 0.5:
            continue
        speeds = [curve.d1(i / 16).norm() for i in range(17)]
        if min(speeds) > 0.05 * curve.diameter:
            return curve
