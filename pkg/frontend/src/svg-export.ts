// Standalone SVG snapshot of the current view, mirroring the structure
// of the server-side render: given circles, spiral paths, curvature
// comb, junction markers, one group per family member.

import type { FeasibleEntry, Pt, Scene } from "./model.js";
import { feasibleEntries, type ResultEntry } from "./model.js";
import { curvatureComb, peakCurvature, samplePolyline } from "./quartic.js";

const PALETTE = ["#1f6fb4", "#c23b22", "#2b8a3e", "#8648b5", "#b58900", "#0a7f8a"];
const CURVE_SAMPLES = 128;
const WIDTH = 640;

function fmt(x: number): string {
  return x.toFixed(4);
}

interface Frame {
  toX(x: number): number;
  toY(y: number): number;
  scale: number;
  height: number;
}

function fitFrame(scene: Scene, entries: FeasibleEntry[]): Frame {
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
  for (const c of scene.circles) {
    take(c.center[0] - c.radius, c.center[1] - c.radius);
    take(c.center[0] + c.radius, c.center[1] + c.radius);
  }
  if (scene.point) take(scene.point[0], scene.point[1]);
  for (const entry of entries) {
    for (const net of entry.spirals) {
      for (const p of net) take(p[0], p[1]);
    }
  }
  if (!Number.isFinite(minX)) {
    minX = -1;
    minY = -1;
    maxX = 1;
    maxY = 1;
  }
  const spanX = Math.max(maxX - minX, 1e-9);
  const spanY = Math.max(maxY - minY, 1e-9);
  const pad = 0.08 * Math.max(spanX, spanY);
  const scale = WIDTH / (spanX + 2 * pad);
  const height = (spanY + 2 * pad) * scale;
  return {
    // y axis flips: world y up, svg y down
    toX: x => (x - minX + pad) * scale,
    toY: y => height - (y - minY + pad) * scale,
    scale,
    height,
  };
}

export function exportSvg(scene: Scene, entries: ResultEntry[]): string {
  const feasible = feasibleEntries(entries);
  if (feasible.length === 0) {
    throw new Error("nothing feasible to export");
  }
  const frame = fitFrame(scene, feasible);
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${fmt(WIDTH)}" height="${fmt(frame.height)}" viewBox="0 0 ${fmt(WIDTH)} ${fmt(frame.height)}">`,
  );
  parts.push(
    "<style>" +
      ".given-circle{fill:none;stroke:#888;stroke-width:1.2}" +
      ".spiral{fill:none;stroke-width:2}" +
      ".comb{stroke-width:0.7;opacity:0.55}" +
      ".junction{fill:#222;stroke:none}" +
      ".label{font:12px sans-serif;fill:#444}" +
      "</style>",
  );
  for (const c of scene.circles) {
    parts.push(
      `<circle class="given-circle" cx="${fmt(frame.toX(c.center[0]))}" cy="${fmt(frame.toY(c.center[1]))}" r="${fmt(c.radius * frame.scale)}"/>`,
    );
  }
  if (scene.point) {
    parts.push(
      `<circle class="junction" cx="${fmt(frame.toX(scene.point[0]))}" cy="${fmt(frame.toY(scene.point[1]))}" r="3"/>`,
    );
  }

  const nets = feasible.flatMap(e => e.spirals);
  const peak = peakCurvature(nets, CURVE_SAMPLES);
  const span = WIDTH / frame.scale;
  const combScale = peak > 0 ? (0.12 * span) / peak : 0;

  feasible.forEach((entry, index) => {
    const color = PALETTE[index % PALETTE.length]!;
    parts.push(`<g class="entry" data-alpha0="${entry.alpha0}" stroke="${color}">`);
    for (const net of entry.spirals) {
      const pts = samplePolyline(net, CURVE_SAMPLES)
        .map((p, i) => `${i === 0 ? "M" : "L"}${fmt(frame.toX(p[0]))} ${fmt(frame.toY(p[1]))}`)
        .join("");
      parts.push(`<path class="spiral" d="${pts}"/>`);
      for (const w of curvatureComb(net, CURVE_SAMPLES, combScale)) {
        parts.push(
          `<line class="comb" x1="${fmt(frame.toX(w.base[0]))}" y1="${fmt(frame.toY(w.base[1]))}" x2="${fmt(frame.toX(w.tip[0]))}" y2="${fmt(frame.toY(w.tip[1]))}"/>`,
        );
      }
      const junction = net[0]!;
      parts.push(
        `<circle class="junction" cx="${fmt(frame.toX(junction[0]))}" cy="${fmt(frame.toY(junction[1]))}" r="2.5"/>`,
      );
    }
    parts.push(
      `<text class="label" x="8" y="${fmt(16 * (index + 1))}" fill="${color}" stroke="none">alpha0=${entry.alpha0}</text>`,
    );
    parts.push("</g>");
  });
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
