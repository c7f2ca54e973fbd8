// Canvas drawing and pointer hit-testing.  Pure functions of the view
// state plus a world-to-screen transform so pan math stays out of the
// event handlers.

import type { Pt, Scene } from "./model.js";
import { feasibleEntries } from "./model.js";
import type { ViewState } from "./session.js";
import { curvatureComb, peakCurvature, samplePolyline } from "./quartic.js";

export const PALETTE = ["#1f6fb4", "#c23b22", "#2b8a3e", "#8648b5", "#b58900", "#0a7f8a"];
const CURVE_SAMPLES = 160;

export interface Transform {
  scale: number;
  minX: number;
  minY: number;
  pad: number;
  height: number;
}

export function fitTransform(view: ViewState, width: number, height: number): Transform {
  let minX = Infinity;
  let minY = Infinity;
  let maxX = -Infinity;
  let maxY = -Infinity;
  const take = (x: number, y: number) => {
    minX = Math.min(minX, x);
    minY = Math.min(minY, y);
    maxX = Math.max(maxX, x);
    maxY = Math.max(maxY, y);
  };
  for (const c of view.scene.circles) {
    take(c.center[0] - c.radius, c.center[1] - c.radius);
    take(c.center[0] + c.radius, c.center[1] + c.radius);
  }
  if (view.scene.point) take(view.scene.point[0], view.scene.point[1]);
  for (const entry of feasibleEntries(view.entries)) {
    for (const net of entry.spirals) for (const p of net) take(p[0], p[1]);
  }
  if (!Number.isFinite(minX)) {
    minX = -10;
    minY = -10;
    maxX = 10;
    maxY = 10;
  }
  const spanX = Math.max(maxX - minX, 1e-9);
  const spanY = Math.max(maxY - minY, 1e-9);
  const pad = 0.1 * Math.max(spanX, spanY);
  const scale = Math.min(width / (spanX + 2 * pad), height / (spanY + 2 * pad));
  return { scale, minX, minY, pad, height };
}

export function toScreen(tr: Transform, p: Pt): Pt {
  return [(p[0] - tr.minX + tr.pad) * tr.scale, tr.height - (p[1] - tr.minY + tr.pad) * tr.scale];
}

export function toWorld(tr: Transform, p: Pt): Pt {
  return [p[0] / tr.scale + tr.minX - tr.pad, (tr.height - p[1]) / tr.scale + tr.minY - tr.pad];
}

export type HitTarget =
  | { kind: "circle-move"; index: number }
  | { kind: "circle-radius"; index: number }
  | { kind: "point-move" }
  | null;

const RIM_GRAB_PX = 9;

export function hitTest(scene: Scene, tr: Transform, screen: Pt): HitTarget {
  if (scene.point) {
    const sp = toScreen(tr, scene.point);
    if (Math.hypot(screen[0] - sp[0], screen[1] - sp[1]) <= 10) {
      return { kind: "point-move" };
    }
  }
  for (let i = scene.circles.length - 1; i >= 0; i--) {
    const c = scene.circles[i]!;
    const sc = toScreen(tr, c.center);
    const dist = Math.hypot(screen[0] - sc[0], screen[1] - sc[1]);
    const rimDist = Math.abs(dist - c.radius * tr.scale);
    if (rimDist <= RIM_GRAB_PX) return { kind: "circle-radius", index: i };
    if (dist < c.radius * tr.scale) return { kind: "circle-move", index: i };
  }
  return null;
}

export function draw(ctx: CanvasRenderingContext2D, view: ViewState, tr: Transform, width: number): void {
  ctx.clearRect(0, 0, width, tr.height);
  ctx.lineJoin = "round";
  ctx.lineCap = "round";

  for (const c of view.scene.circles) {
    const sc = toScreen(tr, c.center);
    ctx.beginPath();
    ctx.arc(sc[0], sc[1], c.radius * tr.scale, 0, 2 * Math.PI);
    ctx.strokeStyle = "#9a9a9a";
    ctx.lineWidth = 1.5;
    ctx.stroke();
    ctx.beginPath();
    ctx.arc(sc[0], sc[1], 2.5, 0, 2 * Math.PI);
    ctx.fillStyle = "#9a9a9a";
    ctx.fill();
  }
  if (view.scene.point) {
    const sp = toScreen(tr, view.scene.point);
    ctx.beginPath();
    ctx.arc(sp[0], sp[1], 4, 0, 2 * Math.PI);
    ctx.fillStyle = "#333";
    ctx.fill();
  }

  const feasible = feasibleEntries(view.entries);
  if (feasible.length === 0) return;

  const nets = feasible.flatMap(e => e.spirals);
  const peak = peakCurvature(nets, CURVE_SAMPLES);
  const span = width / tr.scale;
  const combScale = peak > 0 ? (0.12 * span) / peak : 0;

  feasible.forEach((entry, index) => {
    const primary = index === feasible.length - 1;
    const color = PALETTE[index % PALETTE.length]!;
    ctx.globalAlpha = primary ? 1 : 0.35;
    for (const net of entry.spirals) {
      const pts = samplePolyline(net, CURVE_SAMPLES).map(p => toScreen(tr, p));
      ctx.beginPath();
      pts.forEach((p, i) => (i === 0 ? ctx.moveTo(p[0], p[1]) : ctx.lineTo(p[0], p[1])));
      ctx.strokeStyle = color;
      ctx.lineWidth = primary ? 2.2 : 1.4;
      ctx.stroke();

      if (view.overlays.comb && primary) {
        ctx.lineWidth = 0.8;
        ctx.globalAlpha = 0.5;
        for (const w of curvatureComb(net, CURVE_SAMPLES, combScale)) {
          const a = toScreen(tr, w.base);
          const b = toScreen(tr, w.tip);
          ctx.beginPath();
          ctx.moveTo(a[0], a[1]);
          ctx.lineTo(b[0], b[1]);
          ctx.stroke();
        }
        ctx.globalAlpha = 1;
      }

      if (view.overlays.controlPolygon && primary) {
        ctx.save();
        ctx.setLineDash([4, 3]);
        ctx.lineWidth = 1;
        ctx.strokeStyle = "#777";
        ctx.beginPath();
        net.map(p => toScreen(tr, p)).forEach((p, i) => (i === 0 ? ctx.moveTo(p[0], p[1]) : ctx.lineTo(p[0], p[1])));
        ctx.stroke();
        ctx.restore();
      }
    }

    // junction marker on the primary member
    if (primary) {
      const b0 = toScreen(tr, entry.b0);
      ctx.beginPath();
      ctx.arc(b0[0], b0[1], 4, 0, 2 * Math.PI);
      ctx.fillStyle = "#111";
      ctx.fill();
      if (view.junctionLabel) {
        ctx.font = "12px sans-serif";
        ctx.fillStyle = "#111";
        ctx.fillText(`B0 ${view.junctionLabel}`, b0[0] + 8, b0[1] - 8);
      }
    }
  });
  ctx.globalAlpha = 1;
}
