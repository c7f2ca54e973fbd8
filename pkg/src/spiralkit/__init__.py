"""spiralkit: planar G2 transition curves from single-segment quartic spirals.

The package builds quartic Bezier segments whose curvature is zero at
one end, monotone in between, and exactly 1/r at the other end, then
composes them into transition curves: point to circle, S-shaped between
circles bending apart, and C-shaped between circles bending alike.
Scenes and results round-trip through JSON; results render to SVG with
curvature combs; a CLI and a small HTTP service expose the solvers.
"""

from .errors import (
    BracketingError,
    ConstructionError,
    ConvergenceError,
    DomainError,
    InfeasibleError,
    RenderError,
    SceneError,
    SingularityError,
    SpiralkitError,
)
from .geometry import (
    Point2,
    QuarticBezier,
    UnitVec2,
    Vec2,
    bernstein,
    curvature,
    curvature_derivative,
)
from .rootfind import find_root
from .scene_io import (
    RESULT_SCHEMA,
    SCENE_SCHEMA,
    ResultDocument,
    ResultEntry,
    Scene,
    entry_curves,
    parse_result,
    parse_scene,
    render_svg,
    scene_to_obj,
    solve_document,
    write_result,
)
from .spiral import (
    ALPHA0_MAX,
    RHO1,
    DerivedParams,
    SpiralParams,
    SpiralReport,
    alpha_min_bound,
    build_spiral,
    certify_spiral,
    derive_params,
    endpoint_offsets,
)
from .transitions import (
    Circle,
    ContactResidual,
    SweepOutcome,
    TransitionFrame,
    TransitionResiduals,
    TransitionResult,
    f1_f2,
    q_c_shape,
    q_point_circle,
    q_s_shape,
    solve_c_shape,
    solve_point_circle,
    solve_s_shape,
    sweep_family,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "SpiralkitError",
    "DomainError",
    "SingularityError",
    "InfeasibleError",
    "BracketingError",
    "ConvergenceError",
    "ConstructionError",
    "RenderError",
    "SceneError",
    "Vec2",
    "Point2",
    "UnitVec2",
    "QuarticBezier",
    "bernstein",
    "curvature",
    "curvature_derivative",
    "find_root",
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
    "SCENE_SCHEMA",
    "RESULT_SCHEMA",
    "Scene",
    "ResultEntry",
    "ResultDocument",
    "parse_scene",
    "scene_to_obj",
    "solve_document",
    "write_result",
    "parse_result",
    "entry_curves",
    "render_svg",
]
