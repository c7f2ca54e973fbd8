"""Scene and result serialization plus diagnostic SVG rendering.

A scene is the JSON description of one transition problem: its kind,
the given point/circles, an alpha0 value or grid, and the branch flag.
A result document echoes the scene in canonical form and carries one
entry per alpha0 grid point, each either a full solution (frame,
control points, residuals) or a failure reason.

Serialization is canonical: keys sorted, compact separators, floats in
Python repr form (shortest round-trip), so identical inputs always
produce identical bytes and golden files stay stable.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any

from .errors import DomainError, RenderError, SceneError
from .geometry import QuarticBezier, UnitVec2, Vec2, curvature
from .spiral import ALPHA0_MAX
from .transitions import (
    Circle,
    ContactResidual,
    SweepOutcome,
    TransitionResiduals,
    sweep_family,
)

__all__ = [
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

SCENE_SCHEMA = "spiralkit-scene/1"
RESULT_SCHEMA = "spiralkit-result/1"

_KINDS = ("point_circle", "s_shape", "c_shape")
_BRANCHES = ("left", "right")


@dataclass(frozen=True)
class Scene:
    """Validated transition problem description."""

    kind: str
    point: Vec2 | None
    circles: tuple[Circle, ...]
    alpha0: tuple[float, ...]
    branch: str = "left"

    def alpha0_values(self) -> tuple[float, ...]:
        return self.alpha0

    @property
    def scale(self) -> float:
        """Characteristic length for relative tolerances."""
        lengths = [abs(c.radius) for c in self.circles]
        if len(self.circles) == 2:
            lengths.append((self.circles[1].center - self.circles[0].center).norm())
        elif self.point is not None:
            lengths.append((self.circles[0].center - self.point).norm())
        return max(lengths)


@dataclass(frozen=True)
class ResultEntry:
    """One alpha0 grid point of a result document.

    Feasible entries carry the junction frame, the control points of
    each spiral (5 points per curve, one or two curves), and the
    residual block.  Infeasible entries carry only the reason string.
    """

    alpha0: float
    feasible: bool
    theta: float | None = None
    b0: tuple[float, float] | None = None
    t0: tuple[float, float] | None = None
    t1: tuple[float, float] | None = None
    f1: tuple[float, float] | None = None
    spirals: tuple[tuple[tuple[float, float], ...], ...] = ()
    residuals: TransitionResiduals | None = None
    reason: str | None = None


@dataclass(frozen=True)
class ResultDocument:
    scene: Scene
    entries: tuple[ResultEntry, ...]


# ---------------------------------------------------------------------------
# Scene parsing
# ---------------------------------------------------------------------------

def _fail(code: str, path: str, message: str) -> None:
    raise SceneError(message, code=code, path=path)


def _as_number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail("bad-type", path, f"expected a number, got {type(value).__name__}")
    number = float(value)
    if not math.isfinite(number):
        _fail("domain", path, "number must be finite")
    return number


def _as_pair(value: Any, path: str) -> tuple[float, float]:
    if not isinstance(value, list) or len(value) != 2:
        _fail("bad-type", path, "expected a [x, y] pair")
    return (_as_number(value[0], path + "[0]"), _as_number(value[1], path + "[1]"))


def _check_alpha0_value(value: float, path: str) -> float:
    if not 0.0 < value <= ALPHA0_MAX:
        _fail("domain", path, f"alpha0 must lie in (0, 8/25], got {value!r}")
    return value


def _parse_alpha0(raw: Any, path: str) -> tuple[float, ...]:
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        return (_check_alpha0_value(_as_number(raw, path), path),)
    if isinstance(raw, list):
        return tuple(
            _check_alpha0_value(_as_number(v, f"{path}[{i}]"), f"{path}[{i}]")
            for i, v in enumerate(raw)
        )
    if isinstance(raw, dict):
        allowed = {"start", "stop", "count"}
        for key in raw:
            if key not in allowed:
                _fail("unknown-field", f"{path}.{key}", f"unknown grid field {key!r}")
        for key in allowed:
            if key not in raw:
                _fail("missing-field", f"{path}.{key}", f"grid spec needs {key!r}")
        start = _as_number(raw["start"], f"{path}.start")
        stop = _as_number(raw["stop"], f"{path}.stop")
        count = raw["count"]
        if isinstance(count, bool) or not isinstance(count, int):
            _fail("bad-type", f"{path}.count", "count must be an integer")
        if count < 1:
            _fail("domain", f"{path}.count", f"count must be >= 1, got {count}")
        if count == 1:
            values = [start]
        else:
            step = (stop - start) / (count - 1)
            values = [start + step * k for k in range(count)]
            values[-1] = stop
        return tuple(
            _check_alpha0_value(v, f"{path}[{i}]") for i, v in enumerate(values)
        )
    _fail("bad-type", path, "alpha0 must be a number, a list, or a start/stop/count grid")
    raise AssertionError("unreachable")


def _parse_circle(raw: Any, path: str) -> Circle:
    if not isinstance(raw, dict):
        _fail("bad-type", path, "expected a circle object")
    for key in raw:
        if key not in ("center", "radius"):
            _fail("unknown-field", f"{path}.{key}", f"unknown circle field {key!r}")
    for key in ("center", "radius"):
        if key not in raw:
            _fail("missing-field", f"{path}.{key}", f"circle needs {key!r}")
    cx, cy = _as_pair(raw["center"], f"{path}.center")
    radius = _as_number(raw["radius"], f"{path}.radius")
    if not radius > 0.0:
        _fail("domain", f"{path}.radius", f"radius magnitude must be positive, got {radius!r}")
    return Circle(center=Vec2(cx, cy), radius=radius)


def parse_scene(data: bytes | str) -> Scene:
    """Parse and validate scene JSON.

    Raises SceneError carrying a machine-readable code and the JSON
    path of the offending field.
    """
    try:
        raw = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise SceneError(f"malformed JSON: {exc}", code="malformed-json", path="$") from exc
    if not isinstance(raw, dict):
        _fail("bad-type", "$", "scene must be a JSON object")

    known = {"schema", "kind", "point", "circles", "alpha0", "branch"}
    for key in raw:
        if key not in known:
            _fail("unknown-field", f"$.{key}", f"unknown scene field {key!r}")

    if "schema" in raw and raw["schema"] != SCENE_SCHEMA:
        _fail("domain", "$.schema", f"expected schema {SCENE_SCHEMA!r}, got {raw['schema']!r}")

    if "kind" not in raw:
        _fail("missing-field", "$.kind", "scene needs a kind")
    kind = raw["kind"]
    if kind not in _KINDS:
        _fail("domain", "$.kind", f"kind must be one of {', '.join(_KINDS)}, got {kind!r}")

    branch = raw.get("branch", "left")
    if branch not in _BRANCHES:
        _fail("domain", "$.branch", f"branch must be 'left' or 'right', got {branch!r}")

    if "circles" not in raw:
        _fail("missing-field", "$.circles", "scene needs circles")
    raw_circles = raw["circles"]
    if not isinstance(raw_circles, list):
        _fail("bad-type", "$.circles", "circles must be a list")
    want = 1 if kind == "point_circle" else 2
    if len(raw_circles) != want:
        _fail(
            "arity",
            "$.circles",
            f"kind {kind!r} needs exactly {want} circle(s), got {len(raw_circles)}",
        )
    circles = tuple(
        _parse_circle(c, f"$.circles[{i}]") for i, c in enumerate(raw_circles)
    )

    point: Vec2 | None = None
    if kind == "point_circle":
        if "point" not in raw:
            _fail("missing-field", "$.point", "point_circle scene needs a point")
        px, py = _as_pair(raw["point"], "$.point")
        point = Vec2(px, py)
    elif "point" in raw:
        _fail("unknown-field", "$.point", f"kind {kind!r} takes no point")

    if "alpha0" not in raw:
        _fail("missing-field", "$.alpha0", "scene needs alpha0")
    alpha0 = _parse_alpha0(raw["alpha0"], "$.alpha0")

    return Scene(kind=kind, point=point, circles=circles, alpha0=alpha0, branch=branch)


def scene_to_obj(scene: Scene) -> dict[str, Any]:
    """Canonical JSON object form of a scene (alpha0 always a list)."""
    obj: dict[str, Any] = {
        "schema": SCENE_SCHEMA,
        "kind": scene.kind,
        "circles": [
            {"center": [c.center.x, c.center.y], "radius": c.radius}
            for c in scene.circles
        ],
        "alpha0": list(scene.alpha0),
        "branch": scene.branch,
    }
    if scene.point is not None:
        obj["point"] = [scene.point.x, scene.point.y]
    return obj


# ---------------------------------------------------------------------------
# Result document
# ---------------------------------------------------------------------------

def _vec_pair(v: Vec2 | UnitVec2) -> tuple[float, float]:
    return (v.x, v.y)


def _entry_from_outcome(outcome: SweepOutcome) -> ResultEntry:
    if outcome.result is None:
        return ResultEntry(
            alpha0=outcome.alpha0, feasible=False, reason=outcome.failure
        )
    res = outcome.result
    frame = res.frame
    return ResultEntry(
        alpha0=outcome.alpha0,
        feasible=True,
        theta=frame.theta,
        b0=_vec_pair(frame.b0),
        t0=_vec_pair(frame.t0),
        t1=_vec_pair(frame.t1),
        f1=_vec_pair(frame.f1) if frame.f1 is not None else None,
        spirals=tuple(
            tuple(_vec_pair(p) for p in curve.control_points)
            for curve in res.spirals
        ),
        residuals=res.residuals,
    )


def solve_document(scene: Scene) -> ResultDocument:
    """Solve the scene over its alpha0 grid into a result document."""
    outcomes = sweep_family(scene)
    return ResultDocument(
        scene=scene, entries=tuple(_entry_from_outcome(o) for o in outcomes)
    )


def _residuals_to_obj(res: TransitionResiduals) -> dict[str, Any]:
    return {
        "junction_gap": res.junction_gap,
        "junction_tangent_dot": res.junction_tangent_dot,
        "junction_curvatures": list(res.junction_curvatures),
        "contacts": [
            {"position": c.position, "tangent": c.tangent, "curvature": c.curvature}
            for c in res.contacts
        ],
    }


def _entry_to_obj(entry: ResultEntry) -> dict[str, Any]:
    if not entry.feasible:
        return {"alpha0": entry.alpha0, "feasible": False, "reason": entry.reason}
    assert entry.residuals is not None
    return {
        "alpha0": entry.alpha0,
        "feasible": True,
        "theta": entry.theta,
        "b0": list(entry.b0 or ()),
        "t0": list(entry.t0 or ()),
        "t1": list(entry.t1 or ()),
        "f1": list(entry.f1) if entry.f1 is not None else None,
        "spirals": [[list(p) for p in pts] for pts in entry.spirals],
        "residuals": _residuals_to_obj(entry.residuals),
    }


def write_result(doc: ResultDocument) -> bytes:
    """Serialize a result document to canonical JSON bytes."""
    obj = {
        "schema": RESULT_SCHEMA,
        "scene": scene_to_obj(doc.scene),
        "entries": [_entry_to_obj(e) for e in doc.entries],
    }
    text = json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)
    return (text + "\n").encode("ascii")


def _parse_residuals(raw: Any, path: str) -> TransitionResiduals:
    if not isinstance(raw, dict):
        _fail("bad-type", path, "residuals must be an object")
    try:
        contacts = tuple(
            ContactResidual(
                position=float(c["position"]),
                tangent=float(c["tangent"]),
                curvature=float(c["curvature"]),
            )
            for c in raw["contacts"]
        )
        dot = raw["junction_tangent_dot"]
        return TransitionResiduals(
            junction_gap=float(raw["junction_gap"]),
            junction_tangent_dot=float(dot) if dot is not None else None,
            junction_curvatures=tuple(float(v) for v in raw["junction_curvatures"]),
            contacts=contacts,
        )
    except (KeyError, TypeError, ValueError) as exc:
        _fail("bad-type", path, f"invalid residual block: {exc}")
        raise AssertionError("unreachable")


def _parse_entry(raw: Any, path: str) -> ResultEntry:
    if not isinstance(raw, dict):
        _fail("bad-type", path, "entry must be an object")
    if "alpha0" not in raw or "feasible" not in raw:
        _fail("missing-field", path, "entry needs alpha0 and feasible")
    alpha0 = _as_number(raw["alpha0"], f"{path}.alpha0")
    feasible = raw["feasible"]
    if not isinstance(feasible, bool):
        _fail("bad-type", f"{path}.feasible", "feasible must be a boolean")
    if not feasible:
        reason = raw.get("reason")
        if not isinstance(reason, str):
            _fail("bad-type", f"{path}.reason", "infeasible entry needs a reason string")
        return ResultEntry(alpha0=alpha0, feasible=False, reason=reason)
    for key in ("theta", "b0", "t0", "t1", "spirals", "residuals"):
        if key not in raw:
            _fail("missing-field", f"{path}.{key}", f"feasible entry needs {key!r}")
    spirals_raw = raw["spirals"]
    if not isinstance(spirals_raw, list) or not 1 <= len(spirals_raw) <= 2:
        _fail("arity", f"{path}.spirals", "expected 1 or 2 spirals")
    spirals = []
    for i, pts in enumerate(spirals_raw):
        if not isinstance(pts, list) or len(pts) != 5:
            _fail("arity", f"{path}.spirals[{i}]", "each spiral carries 5 control points")
        spirals.append(
            tuple(_as_pair(p, f"{path}.spirals[{i}][{j}]") for j, p in enumerate(pts))
        )
    f1_raw = raw.get("f1")
    return ResultEntry(
        alpha0=alpha0,
        feasible=True,
        theta=_as_number(raw["theta"], f"{path}.theta"),
        b0=_as_pair(raw["b0"], f"{path}.b0"),
        t0=_as_pair(raw["t0"], f"{path}.t0"),
        t1=_as_pair(raw["t1"], f"{path}.t1"),
        f1=_as_pair(f1_raw, f"{path}.f1") if f1_raw is not None else None,
        spirals=tuple(spirals),
        residuals=_parse_residuals(raw["residuals"], f"{path}.residuals"),
    )


def parse_result(data: bytes | str) -> ResultDocument:
    """Parse result JSON back into a document (inverse of write_result)."""
    try:
        raw = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise SceneError(f"malformed JSON: {exc}", code="malformed-json", path="$") from exc
    if not isinstance(raw, dict):
        _fail("bad-type", "$", "result must be a JSON object")
    if raw.get("schema") != RESULT_SCHEMA:
        _fail("domain", "$.schema", f"expected schema {RESULT_SCHEMA!r}")
    if "scene" not in raw or "entries" not in raw:
        _fail("missing-field", "$", "result needs scene and entries")
    scene_obj = dict(raw["scene"])
    scene = parse_scene(json.dumps(scene_obj))
    entries_raw = raw["entries"]
    if not isinstance(entries_raw, list):
        _fail("bad-type", "$.entries", "entries must be a list")
    entries = tuple(
        _parse_entry(e, f"$.entries[{i}]") for i, e in enumerate(entries_raw)
    )
    return ResultDocument(scene=scene, entries=entries)


def entry_curves(entry: ResultEntry) -> tuple[QuarticBezier, ...]:
    """Rebuild the Bezier curves stored in a feasible entry."""
    if not entry.feasible:
        raise DomainError("infeasible entries carry no curves")
    return tuple(
        QuarticBezier(*(Vec2(x, y) for (x, y) in pts)) for pts in entry.spirals
    )


# ---------------------------------------------------------------------------
# SVG rendering
# ---------------------------------------------------------------------------

_PALETTE = (
    "#1f6fb4",
    "#c23b22",
    "#2a8c4a",
    "#8a56b0",
    "#d07f2c",
    "#5c6068",
    "#b03a6e",
    "#3a8f96",
)

_SVG_STYLE = (
    ".given-circle{fill:none;stroke:#9aa0a6;stroke-width:1.5}"
    ".spiral{fill:none;stroke-width:2}"
    ".control-polygon{fill:none;stroke-width:1;stroke-dasharray:4 3;opacity:0.7}"
    ".comb{stroke-width:0.6;opacity:0.55}"
    ".comb-envelope{fill:none;stroke-width:0.8;opacity:0.55}"
    ".label{font:12px sans-serif;fill:#333}"
    ".junction{fill:#333}"
)

_VIEW_WIDTH = 800.0


def _fmt(value: float) -> str:
    return f"{value:.4f}"


def render_svg(
    result: ResultDocument,
    samples: int = 256,
    comb_scale: float | None = None,
    show_control_polygon: bool = False,
) -> bytes:
    """Render a result document as a diagnostic SVG.

    Draws the given circles, each feasible entry's spirals as sampled
    polylines with a curvature comb (normal whiskers of length
    proportional to the local curvature), optional control polygons,
    and an alpha0 label per entry.  Output is deterministic for
    identical inputs.
    """
    if samples < 8:
        raise DomainError(f"need at least 8 samples per curve, got {samples}")
    feasible = [e for e in result.entries if e.feasible]
    if not feasible:
        raise RenderError("result has no feasible entries to render")

    # World-space geometry first: polylines, whiskers, extents.
    ts = [i / samples for i in range(samples + 1)]
    whisker_stride = max(1, samples // 32)
    entry_geometry = []
    kappa_peak = 0.0
    xs: list[float] = []
    ys: list[float] = []
    for entry in feasible:
        curves = entry_curves(entry)
        polylines = []
        whisker_data = []
        for curve in curves:
            pts = [curve.point(t) for t in ts]
            polylines.append(pts)
            xs.extend(p.x for p in pts)
            ys.extend(p.y for p in pts)
            per_curve = []
            for i in range(0, samples + 1, whisker_stride):
                t = ts[i]
                k = curvature(curve, t)
                d = curve.d1(t)
                normal = Vec2(-d.y, d.x)
                nn = normal.norm()
                if nn > 0.0:
                    normal = Vec2(normal.x / nn, normal.y / nn)
                per_curve.append((pts[i], normal, k))
                kappa_peak = max(kappa_peak, abs(k))
            whisker_data.append(per_curve)
        entry_geometry.append((entry, polylines, whisker_data))
    for circle in result.scene.circles:
        xs.extend((circle.center.x - circle.radius, circle.center.x + circle.radius))
        ys.extend((circle.center.y - circle.radius, circle.center.y + circle.radius))
    if result.scene.point is not None:
        xs.append(result.scene.point.x)
        ys.append(result.scene.point.y)

    min_x, max_x = min(xs), max(xs)
    min_y, max_y = min(ys), max(ys)
    span = max(max_x - min_x, max_y - min_y)
    if comb_scale is None:
        comb_scale = 0.0 if kappa_peak == 0.0 else 0.12 * span / kappa_peak
    # Comb whiskers extend the extents; include their tips before framing.
    for _, _, whisker_data in entry_geometry:
        for per_curve in whisker_data:
            for base, normal, k in per_curve:
                tip = base - normal * (comb_scale * k)
                xs.append(tip.x)
                ys.append(tip.y)
    min_x, max_x = min(xs), max(xs)
    min_y, max_y = min(ys), max(ys)
    margin = 0.05 * max(max_x - min_x, max_y - min_y)
    min_x -= margin
    max_x += margin
    min_y -= margin
    max_y += margin

    scale = _VIEW_WIDTH / (max_x - min_x)
    height = (max_y - min_y) * scale

    def view(p: Vec2) -> tuple[float, float]:
        # y-up world to y-down viewport, uniform scale
        return ((p.x - min_x) * scale, (max_y - p.y) * scale)

    def polyline_attr(points: list[Vec2]) -> str:
        return " ".join(f"{_fmt(vx)},{_fmt(vy)}" for vx, vy in map(view, points))

    parts: list[str] = []
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_fmt(_VIEW_WIDTH)} '
        f'{_fmt(height)}" width="{_fmt(_VIEW_WIDTH)}" height="{_fmt(height)}">'
    )
    parts.append(f"<style>{_SVG_STYLE}</style>")

    parts.append('<g class="scene">')
    for circle in result.scene.circles:
        cx, cy = view(circle.center)
        parts.append(
            f'<circle class="given-circle" cx="{_fmt(cx)}" cy="{_fmt(cy)}" '
            f'r="{_fmt(circle.radius * scale)}"/>'
        )
    if result.scene.point is not None:
        px, py = view(result.scene.point)
        parts.append(f'<circle class="junction" cx="{_fmt(px)}" cy="{_fmt(py)}" r="3"/>')
    parts.append("</g>")

    for index, (entry, polylines, whisker_data) in enumerate(entry_geometry):
        color = _PALETTE[index % len(_PALETTE)]
        parts.append(
            f'<g class="entry" data-alpha0="{entry.alpha0!r}" stroke="{color}">'
        )
        for per_curve in whisker_data:
            tips = []
            for base, normal, k in per_curve:
                tip = base - normal * (comb_scale * k)
                bx, by = view(base)
                tx, hy = view(tip)
                parts.append(
                    f'<line class="comb" x1="{_fmt(bx)}" y1="{_fmt(by)}" '
                    f'x2="{_fmt(tx)}" y2="{_fmt(hy)}"/>'
                )
                tips.append(tip)
            parts.append(
                f'<polyline class="comb-envelope" points="{polyline_attr(tips)}"/>'
            )
        for pts in polylines:
            parts.append(f'<polyline class="spiral" points="{polyline_attr(pts)}"/>')
        if show_control_polygon:
            for curve_pts in entry.spirals:
                world = [Vec2(x, y) for (x, y) in curve_pts]
                parts.append(
                    f'<polyline class="control-polygon" points="{polyline_attr(world)}"/>'
                )
        assert entry.b0 is not None
        bx, by = view(Vec2(*entry.b0))
        parts.append(f'<circle class="junction" cx="{_fmt(bx)}" cy="{_fmt(by)}" r="2.5"/>')
        parts.append(
            f'<text class="label" x="{_fmt(bx + 8.0)}" y="{_fmt(by - 8.0)}">'
            f"alpha0={entry.alpha0!r}</text>"
        )
        parts.append("</g>")

    parts.append("</svg>")
    return "\n".join(parts).encode("utf-8")
