"""Scene/result JSON and SVG rendering."""

import json
import math
import re

import pytest

from conftest import EXAMPLE1_SCENE_JSON, EXAMPLE2_SCENE_JSON
from spiralkit import (
    DomainError,
    QuarticBezier,
    RenderError,
    SceneError,
    Vec2,
    entry_curves,
    parse_result,
    parse_scene,
    render_svg,
    scene_to_obj,
    solve_document,
    write_result,
)

# --- scene parsing ----------------------------------------------------------


def scene_err(data) -> SceneError:
    with pytest.raises(SceneError) as exc_info:
        parse_scene(data)
    return exc_info.value


def test_parse_point_circle_scene(example1_scene):
    s = example1_scene
    assert s.kind == "point_circle"
    assert s.point == Vec2(0.0, 0.0)
    assert len(s.circles) == 1
    assert s.circles[0].center.x == 13.0
    assert s.circles[0].radius == 5.0
    assert s.alpha0 == (0.32,)
    assert s.branch == "left"
    assert s.scale == 20.0


def test_parse_s_shape_scene(example2_scene):
    s = example2_scene
    assert s.kind == "s_shape"
    assert s.point is None
    assert [c.radius for c in s.circles] == [5.0, 2.0]
    assert s.scale == pytest.approx(math.sqrt(149.0), rel=1e-15)


def test_alpha0_out_of_range():
    err = scene_err(
        '{"kind": "s_shape", "circles": [{"center": [10, 7], "radius": 5},'
        ' {"center": [0, 0], "radius": 2}], "alpha0": 0.5}'
    )
    assert err.code == "domain"
    assert err.path == "$.alpha0"
    assert "8/25" in str(err)


def test_alpha0_list_and_grid_forms():
    base = (
        '{"kind": "s_shape", "circles": [{"center": [10, 7], "radius": 5},'
        ' {"center": [0, 0], "radius": 2}], "alpha0": %s}'
    )
    assert parse_scene(base % "[0.1, 0.2, 0.32]").alpha0 == (0.1, 0.2, 0.32)
    grid = parse_scene(base % '{"start": 0.1, "stop": 0.3, "count": 5}').alpha0
    assert len(grid) == 5
    assert grid[0] == 0.1 and grid[-1] == 0.3  # endpoints exact
    assert grid == pytest.approx((0.1, 0.15, 0.2, 0.25, 0.3), abs=1e-15)
    assert parse_scene(base % '{"start": 0.17, "stop": 0.3, "count": 1}').alpha0 == (0.17,)

    err = scene_err(base % '{"start": 0.1, "stop": 0.3, "count": 0}')
    assert (err.code, err.path) == ("domain", "$.alpha0.count")
    err = scene_err(base % '{"start": 0.1, "stop": 0.3, "count": 2.5}')
    assert (err.code, err.path) == ("bad-type", "$.alpha0.count")
    err = scene_err(base % '{"start": 0.1, "stop": 0.3}')
    assert err.code == "missing-field"
    err = scene_err(base % '{"start": 0.1, "stop": 0.3, "count": 2, "step": 1}')
    assert (err.code, err.path) == ("unknown-field", "$.alpha0.step")
    err = scene_err(base % '"0.2"')
    assert (err.code, err.path) == ("bad-type", "$.alpha0")
    # every grid member must respect the domain bound
    err = scene_err(base % '{"start": 0.2, "stop": 0.4, "count": 3}')
    assert err.code == "domain"


def test_malformed_json():
    err = scene_err('{"kind": ')
    assert err.code == "malformed-json"
    assert err.path == "$"


def test_scene_must_be_object():
    assert scene_err("[1, 2]").code == "bad-type"
    assert scene_err('"hello"').code == "bad-type"


def test_missing_fields():
    err = scene_err('{"circles": [], "alpha0": 0.2}')
    assert (err.code, err.path) == ("missing-field", "$.kind")
    err = scene_err('{"kind": "s_shape", "alpha0": 0.2}')
    assert (err.code, err.path) == ("missing-field", "$.circles")
    err = scene_err(
        '{"kind": "point_circle", "circles": [{"center": [13, 0], "radius": 5}],'
        ' "alpha0": 0.2}'
    )
    assert (err.code, err.path) == ("missing-field", "$.point")
    err = scene_err(
        '{"kind": "point_circle", "point": [0, 0],'
        ' "circles": [{"center": [13, 0], "radius": 5}]}'
    )
    assert (err.code, err.path) == ("missing-field", "$.alpha0")


def test_unknown_fields_rejected():
    err = scene_err(
        '{"kind": "s_shape", "circles": [{"center": [10, 7], "radius": 5},'
        ' {"center": [0, 0], "radius": 2}], "alpha0": 0.2, "florp": 1}'
    )
    assert (err.code, err.path) == ("unknown-field", "$.florp")
    err = scene_err(
        '{"kind": "s_shape", "circles": [{"center": [10, 7], "radius": 5, "label": "a"},'
        ' {"center": [0, 0], "radius": 2}], "alpha0": 0.2}'
    )
    assert (err.code, err.path) == ("unknown-field", "$.circles[0].label")
    # a point on a two-circle scene is likewise a foreign field
    err = scene_err(
        '{"kind": "s_shape", "point": [1, 1], "circles": [{"center": [10, 7], "radius": 5},'
        ' {"center": [0, 0], "radius": 2}], "alpha0": 0.2}'
    )
    assert (err.code, err.path) == ("unknown-field", "$.point")


def test_circle_arity():
    err = scene_err(
        '{"kind": "point_circle", "point": [0, 0], "circles": ['
        '{"center": [13, 0], "radius": 5}, {"center": [0, 0], "radius": 2}],'
        ' "alpha0": 0.2}'
    )
    assert (err.code, err.path) == ("arity", "$.circles")
    err = scene_err('{"kind": "c_shape", "circles": [{"center": [13, 0], "radius": 5}], "alpha0": 0.2}')
    assert (err.code, err.path) == ("arity", "$.circles")


def test_value_validation():
    err = scene_err(
        '{"kind": "s_shape", "circles": [{"center": [10, 7], "radius": -5},'
        ' {"center": [0, 0], "radius": 2}], "alpha0": 0.2}'
    )
    assert (err.code, err.path) == ("domain", "$.circles[0].radius")
    err = scene_err(
        '{"kind": "s_shape", "circles": [{"center": [Infinity, 7], "radius": 5},'
        ' {"center": [0, 0], "radius": 2}], "alpha0": 0.2}'
    )
    assert err.code == "domain"
    assert "finite" in str(err)
    err = scene_err(
        '{"kind": "s_shape", "circles": [{"center": [10, 7], "radius": true},'
        ' {"center": [0, 0], "radius": 2}], "alpha0": 0.2}'
    )
    assert err.code == "bad-type"
    err = scene_err(
        '{"kind": "s_shape", "circles": [{"center": [10], "radius": 5},'
        ' {"center": [0, 0], "radius": 2}], "alpha0": 0.2}'
    )
    assert (err.code, err.path) == ("bad-type", "$.circles[0].center")


def test_kind_and_branch_validation():
    err = scene_err('{"kind": "zigzag", "circles": [], "alpha0": 0.2}')
    assert (err.code, err.path) == ("domain", "$.kind")
    err = scene_err(
        '{"kind": "s_shape", "branch": "up", "circles": [{"center": [10, 7], "radius": 5},'
        ' {"center": [0, 0], "radius": 2}], "alpha0": 0.2}'
    )
    assert (err.code, err.path) == ("domain", "$.branch")


def test_schema_field_optional_but_checked():
    ok = json.loads(EXAMPLE2_SCENE_JSON)
    ok["schema"] = "spiralkit-scene/1"
    parse_scene(json.dumps(ok))
    ok["schema"] = "spiralkit-scene/2"
    err = scene_err(json.dumps(ok))
    assert (err.code, err.path) == ("domain", "$.schema")


def test_scene_to_obj_round_trip(example1_scene, example2_scene):
    for scene in (example1_scene, example2_scene):
        obj = scene_to_obj(scene)
        assert obj["schema"] == "spiralkit-scene/1"
        assert isinstance(obj["alpha0"], list)
        assert obj["branch"] in ("left", "right")
        again = parse_scene(json.dumps(obj))
        assert again == scene


# --- result serialization -----------------------------------------------------


def test_result_round_trip(example2_document):
    body = write_result(example2_document)
    assert body.endswith(b"\n")
    body.decode("ascii")  # must not raise
    doc = parse_result(body)
    assert doc.scene == example2_document.scene
    assert len(doc.entries) == len(example2_document.entries)
    for got, want in zip(doc.entries, example2_document.entries):
        assert got.feasible == want.feasible
        assert got.theta == want.theta  # bit-exact through repr
        assert got.spirals == want.spirals
        assert got.residuals == want.residuals


def test_result_bytes_canonical(example2_document):
    body = write_result(example2_document)
    assert body == write_result(example2_document)
    # re-serializing a parsed document reproduces the bytes
    assert write_result(parse_result(body)) == body
    # canonical form: sorted keys, compact separators
    assert body.startswith(b'{"entries":')
    assert b'"schema":"spiralkit-result/1"' in body


def test_result_contains_reference_angle(example2_document):
    body = write_result(example2_document)
    assert b'"theta":0.8679671754230804' in body
    assert b'"feasible":true' in body
    assert b'"junction_gap"' in body
    assert b'"contacts"' in body


def test_infeasible_entries_serialize():
    scene = parse_scene(
        '{"kind": "s_shape", "circles": [{"center": [0, 0], "radius": 5},'
        ' {"center": [6, 0], "radius": 2}], "alpha0": [0.1, 0.2]}'
    )
    doc = solve_document(scene)
    assert all(not e.feasible for e in doc.entries)
    body = write_result(doc)
    parsed = parse_result(body)
    for entry in parsed.entries:
        assert not entry.feasible
        assert "strictly separated" in entry.reason
        assert entry.spirals == ()
        with pytest.raises(DomainError):
            entry_curves(entry)


def test_parse_result_validation(example2_document):
    with pytest.raises(SceneError) as e:
        parse_result(b"{nope")
    assert e.value.code == "malformed-json"
    with pytest.raises(SceneError):
        parse_result(b'{"schema": "other/1"}\n')
    body = write_result(example2_document)
    broken = json.loads(body)
    del broken["entries"][0]["theta"]
    with pytest.raises(SceneError):
        parse_result(json.dumps(broken))


def test_entry_curves_rebuild(example2_document):
    entry = example2_document.entries[0]
    curves = entry_curves(entry)
    assert len(curves) == 2
    assert all(isinstance(c, QuarticBezier) for c in curves)
    assert curves[0].b0.x == pytest.approx(20.0 / 7.0, rel=1e-14)


# --- SVG rendering --------------------------------------------------------------


def svg_floats(attr: str) -> list[float]:
    return [float(v) for v in attr.replace(",", " ").split()]


def test_svg_basic_structure(example2_document):
    svg = render_svg(example2_document).decode("utf-8")
    assert svg.startswith("<svg xmlns=")
    assert svg.count('class="given-circle"') == 2
    assert svg.count('<polyline class="spiral"') == 2
    assert svg.count('<g class="entry"') == 1
    assert "alpha0=0.32" in svg
    assert 'class="comb"' in svg
    assert 'class="comb-envelope"' in svg
    assert 'class="control-polygon"' not in svg


def test_svg_deterministic(example2_document, example2_scene):
    first = render_svg(example2_document)
    second = render_svg(example2_document)
    assert first == second
    resolve = render_svg(solve_document(example2_scene))
    assert resolve == first


def test_svg_spirals_join_and_touch_circles(example2_document):
    svg = render_svg(example2_document).decode("utf-8")
    circles = re.findall(
        r'<circle class="given-circle" cx="([^"]+)" cy="([^"]+)" r="([^"]+)"/>', svg
    )
    assert len(circles) == 2
    polylines = re.findall(r'<polyline class="spiral" points="([^"]+)"/>', svg)
    assert len(polylines) == 2
    starts = []
    for attr, circle in zip(polylines, circles):
        vals = svg_floats(attr)
        start = (vals[0], vals[1])
        end = (vals[-2], vals[-1])
        starts.append(start)
        cx, cy, cr = (float(v) for v in circle)
        dist = math.hypot(end[0] - cx, end[1] - cy)
        # t=1 lies on the circle; only the 4-decimal formatting blurs it
        assert dist == pytest.approx(cr, abs=0.01)
    # both curves leave the same junction point
    assert math.hypot(
        starts[0][0] - starts[1][0], starts[0][1] - starts[1][1]
    ) <= 0.01


def test_svg_comb_growth(example2_document):
    svg = render_svg(example2_document).decode("utf-8")
    combs = re.findall(
        r'<line class="comb" x1="([^"]+)" y1="([^"]+)" x2="([^"]+)" y2="([^"]+)"/>',
        svg,
    )
    # samples=256, whisker stride 8: 33 whiskers per curve, two curves
    assert len(combs) == 66
    lengths = [
        math.hypot(float(x2) - float(x1), float(y2) - float(y1))
        for x1, y1, x2, y2 in combs[:33]
    ]
    assert lengths[0] <= 0.05  # zero curvature at the junction
    assert lengths[-1] > 5.0
    for prev, cur in zip(lengths, lengths[1:]):
        assert cur >= prev - 0.05  # monotone within formatting noise


def test_svg_control_polygon_option(example2_document):
    svg = render_svg(example2_document, show_control_polygon=True).decode("utf-8")
    polys = re.findall(r'<polyline class="control-polygon" points="([^"]+)"/>', svg)
    assert len(polys) == 2
    assert all(len(svg_floats(p)) == 10 for p in polys)


def test_svg_multiple_entries_get_distinct_groups():
    scene = parse_scene(
        '{"kind": "s_shape", "circles": [{"center": [10, 7], "radius": 5},'
        ' {"center": [0, 0], "radius": 2}], "alpha0": [0.25, 0.32]}'
    )
    svg = render_svg(solve_document(scene)).decode("utf-8")
    groups = re.findall(r'<g class="entry" data-alpha0="([^"]+)" stroke="([^"]+)">', svg)
    assert [g[0] for g in groups] == ["0.25", "0.32"]
    assert groups[0][1] != groups[1][1]
    assert "alpha0=0.25" in svg and "alpha0=0.32" in svg


def test_svg_requires_feasible_entry():
    scene = parse_scene(
        '{"kind": "s_shape", "circles": [{"center": [0, 0], "radius": 5},'
        ' {"center": [6, 0], "radius": 2}], "alpha0": 0.2}'
    )
    doc = solve_document(scene)
    with pytest.raises(RenderError):
        render_svg(doc)


def test_svg_sample_floor(example2_document):
    with pytest.raises(DomainError):
        render_svg(example2_document, samples=4)


def test_svg_point_circle_scene(example1_document):
    svg = render_svg(example1_document).decode("utf-8")
    assert svg.count('class="given-circle"') == 1
    assert svg.count('<polyline class="spiral"') == 1
    # two junction dots: the input point and the curve start (they
    # coincide here but are drawn by different passes)
    assert svg.count('class="junction"') == 2
