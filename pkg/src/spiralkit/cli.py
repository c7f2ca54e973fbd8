"""Command-line interface and the stateless HTTP solve service.

Exit codes follow the rule that infeasibility is an answer, not a
failure: 0 means at least one feasible entry, 2 means the solver ran
and proved every grid point infeasible (or there was nothing to check),
1 means the input itself was unusable, and 3 (certify only) means a
stored result no longer satisfies the spiral residuals.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import math
import os
import sys
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .errors import DomainError, SceneError, SpiralkitError
from .geometry import QuarticBezier, UnitVec2, curvature
from .scene_io import (
    ResultDocument,
    ResultEntry,
    Scene,
    entry_curves,
    parse_result,
    parse_scene,
    render_svg,
    solve_document,
    write_result,
)
from .spiral import ALPHA0_MAX, SpiralParams, certify_spiral

__all__ = ["main", "create_server"]

_LOG = logging.getLogger("spiralkit")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_RESIDUAL = 3


def _configure_logging() -> None:
    level_name = os.environ.get("SPIRALKIT_LOG", "WARNING").upper()
    level = getattr(logging, level_name, None)
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spiralkit",
        description="G2 transition curves from single-segment quartic spirals",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve a scene file over its alpha0 grid")
    solve.add_argument("scene", help="path to a scene JSON file")
    solve.add_argument("-o", "--output", help="result JSON path (default: stdout)")
    solve.add_argument("--svg", help="also render the result as SVG to this path")
    solve.add_argument(
        "--alpha0",
        type=float,
        action="append",
        help="override the scene's alpha0 grid (repeatable)",
    )
    solve.add_argument(
        "--branch", choices=("left", "right"), help="override the scene's branch"
    )
    solve.add_argument(
        "--control-polygon",
        action="store_true",
        help="include control polygons in the SVG",
    )

    certify = sub.add_parser(
        "certify", help="re-check the spiral residuals of a stored result"
    )
    certify.add_argument("result", help="path to a result JSON file")

    serve = sub.add_parser("serve", help="run the HTTP solve service")
    serve.add_argument("--port", type=int, default=8787)
    serve.add_argument("--bind", default="127.0.0.1")
    return parser


def main(argv: list[str] | None = None) -> int:
    _configure_logging()
    args = build_parser().parse_args(argv)
    try:
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "certify":
            return _cmd_certify(args)
        if args.command == "serve":
            return _cmd_serve(args)
    except SceneError as exc:
        print(f"error: {exc} (code={exc.code}, path={exc.path})", file=sys.stderr)
        return EXIT_INPUT
    except (DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    raise AssertionError("unreachable command")


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------

def _cmd_solve(args: argparse.Namespace) -> int:
    with open(args.scene, "rb") as fh:
        scene = parse_scene(fh.read())
    if args.alpha0:
        for value in args.alpha0:
            if not 0.0 < value <= ALPHA0_MAX:
                raise DomainError(f"alpha0 must lie in (0, 8/25], got {value!r}")
        scene = dataclasses.replace(scene, alpha0=tuple(args.alpha0))
    if args.branch:
        scene = dataclasses.replace(scene, branch=args.branch)

    doc = solve_document(scene)
    payload = write_result(doc)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)

    feasible = sum(1 for e in doc.entries if e.feasible)
    if args.svg:
        if feasible:
            svg = render_svg(doc, show_control_polygon=args.control_polygon)
            with open(args.svg, "wb") as fh:
                fh.write(svg)
        else:
            print("no feasible entries; skipping SVG", file=sys.stderr)
    for entry in doc.entries:
        if not entry.feasible:
            print(f"alpha0={entry.alpha0!r}: {entry.reason}", file=sys.stderr)
    print(
        f"{feasible}/{len(doc.entries)} grid points feasible", file=sys.stderr
    )
    return EXIT_OK if feasible else EXIT_INFEASIBLE


# ---------------------------------------------------------------------------
# certify
# ---------------------------------------------------------------------------

def _expected_end_curvatures(scene: Scene) -> tuple[float, ...]:
    # Signed curvature each stored spiral must reach at t=1, given the
    # problem kind and mirror branch.
    sign = 1.0 if scene.branch == "left" else -1.0
    radii = [c.radius for c in scene.circles]
    if scene.kind == "point_circle":
        return (sign / radii[0],)
    if scene.kind == "s_shape":
        return (sign / radii[0], sign / radii[1])
    return (sign / radii[0], -sign / radii[1])


def _certify_entry(
    scene: Scene, entry: ResultEntry, index: int
) -> str | None:
    """Recheck one stored entry; returns a failure message or None."""
    scale = scene.scale
    targets = _expected_end_curvatures(scene)
    curves = entry_curves(entry)
    if len(curves) != len(targets):
        return f"entry {index}: expected {len(targets)} spirals, found {len(curves)}"
    assert entry.theta is not None and entry.b0 is not None
    for i, curve in enumerate(curves):
        radius = scene.circles[i].radius
        label = f"entry {index} spiral {i}"
        gap = (curve.b0 - _vec(entry.b0)).norm()
        if gap > 1e-9 * scale:
            return f"{label}: start point sits {gap:.3e} from the stored junction"
        params = SpiralParams(
            b0=curve.b0,
            t0=UnitVec2.from_vec(curve.d1(0.0)),
            theta=entry.theta,
            r=radius,
            alpha0=entry.alpha0,
        )
        report = certify_spiral(curve, params)
        if not report.monotone:
            return f"{label}: curvature derivative changes sign (not a spiral)"
        if abs(report.kappa0) > 1e-6 / radius:
            return f"{label}: start curvature {report.kappa0:.3e} exceeds 1e-6/r"
        target = targets[i]
        if abs(report.kappa1 - target) > 1e-6 * abs(target):
            return (
                f"{label}: end curvature {report.kappa1!r} misses target "
                f"{target!r} beyond 1e-6 relative"
            )
        if abs(report.dkappa1) > 1e-6 * max(1.0, 1.0 / radius):
            return f"{label}: end curvature derivative {report.dkappa1:.3e} is not flat"
        end = curve.point(1.0)
        center = scene.circles[i].center
        position = abs((end - center).norm() - radius)
        if position > 1e-6 * scale:
            return f"{label}: contact point misses its circle by {position:.3e}"
        radial = end - center
        tangent = curve.d1(1.0)
        alignment = abs(tangent.dot(radial)) / (tangent.norm() * radial.norm())
        if alignment > 1e-6:
            return f"{label}: contact tangent is not perpendicular to the radius"
    return None


def _vec(pair: tuple[float, float]):
    from .geometry import Vec2

    return Vec2(pair[0], pair[1])


def _cmd_certify(args: argparse.Namespace) -> int:
    with open(args.result, "rb") as fh:
        doc = parse_result(fh.read())
    feasible = [(i, e) for i, e in enumerate(doc.entries) if e.feasible]
    if not feasible:
        print("no feasible entries to certify", file=sys.stderr)
        return EXIT_INFEASIBLE
    for index, entry in feasible:
        failure = _certify_entry(doc.scene, entry, index)
        if failure is not None:
            print(f"FAIL {failure}", file=sys.stderr)
            return EXIT_RESIDUAL
        print(
            f"entry {index} alpha0={entry.alpha0!r}: certified "
            f"({len(entry.spirals)} spiral(s))"
        )
    return EXIT_OK


# ---------------------------------------------------------------------------
# serve
# ---------------------------------------------------------------------------

def _error_body(message: str, code: str, path: str | None = None) -> bytes:
    obj: dict[str, object] = {"error": {"message": message, "code": code}}
    if path is not None:
        obj["error"]["path"] = path  # type: ignore[index]
    return (json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n").encode()


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt: str, *args: object) -> None:
        _LOG.info("%s %s", self.address_string(), fmt % args)

    def _send(
        self,
        status: int,
        body: bytes,
        content_type: str = "application/json",
        extra: dict[str, str] | None = None,
    ) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        for key, value in (extra or {}).items():
            self.send_header(key, value)
        self.end_headers()
        self.wfile.write(body)

    def do_OPTIONS(self) -> None:  # CORS preflight for the browser UI
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self) -> None:
        if self.path == "/healthz":
            self._send(200, b"ok", content_type="text/plain; charset=utf-8")
            return
        if self.path == "/v1/limits":
            body = (
                json.dumps(
                    {"alpha0_max": ALPHA0_MAX, "theta_max": 0.5 * math.pi},
                    sort_keys=True,
                    separators=(",", ":"),
                )
                + "\n"
            ).encode()
            self._send(200, body)
            return
        self._send(404, _error_body(f"no such path: {self.path}", "not-found"))

    def do_POST(self) -> None:
        if self.path != "/v1/solve":
            self._send(404, _error_body(f"no such path: {self.path}", "not-found"))
            return
        started = time.perf_counter()
        length = int(self.headers.get("Content-Length") or 0)
        body = self.rfile.read(length)
        try:
            scene = parse_scene(body)
        except SceneError as exc:
            self._send(400, _error_body(str(exc), exc.code, exc.path))
            return
        try:
            doc = solve_document(scene)
            payload = write_result(doc)
        except SpiralkitError as exc:
            _LOG.error("solve failed: %s", exc)
            self._send(500, _error_body(str(exc), "internal"))
            return
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        # Timing travels in a header so the body stays byte-identical
        # with the CLI's output for the same scene.
        self._send(200, payload, extra={"X-Elapsed-Ms": f"{elapsed_ms:.3f}"})


def create_server(bind: str = "127.0.0.1", port: int = 8787) -> ThreadingHTTPServer:
    """Build the HTTP server without starting it (tests pick port 0)."""
    return ThreadingHTTPServer((bind, port), _Handler)


def _cmd_serve(args: argparse.Namespace) -> int:
    server = create_server(args.bind, args.port)
    host, port = server.server_address[:2]
    print(f"spiralkit service listening on http://{host}:{port}", file=sys.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return EXIT_OK
