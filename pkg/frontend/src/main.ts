// DOM wiring for the designer page.

import { DesignSession, type ViewState } from "./session.js";
import { SolveClient } from "./solver-client.js";
import { PRESETS, feasibleEntries, formatCoord, type Branch, type Kind, type Pt } from "./model.js";
import { draw, fitTransform, hitTest, toWorld, type HitTarget, type Transform } from "./render.js";
import { exportSvg } from "./svg-export.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

const params = new URLSearchParams(location.search);
const serviceUrl = params.get("service") ?? "http://127.0.0.1:8787";
const client = new SolveClient(serviceUrl);

const canvas = el<HTMLCanvasElement>("view");
const ctx = canvas.getContext("2d")!;
const banner = el<HTMLDivElement>("banner");
const status = el<HTMLDivElement>("status");
const presetSelect = el<HTMLSelectElement>("preset");
const kindSelect = el<HTMLSelectElement>("kind");
const branchSelect = el<HTMLSelectElement>("branch");
const alphaSlider = el<HTMLInputElement>("alpha0");
const alphaReadout = el<HTMLSpanElement>("alpha0-value");
const sweepBox = el<HTMLInputElement>("sweep");
const combBox = el<HTMLInputElement>("comb");
const polygonBox = el<HTMLInputElement>("control-polygon");
const exportJsonBtn = el<HTMLButtonElement>("export-json");
const exportSvgBtn = el<HTMLButtonElement>("export-svg");

for (const [key, preset] of Object.entries(PRESETS)) {
  const option = document.createElement("option");
  option.value = key;
  option.textContent = preset.label;
  presetSelect.appendChild(option);
}

let lastView: ViewState | null = null;
let transform: Transform | null = null;
let dragging: HitTarget = null;

function redraw(view: ViewState): void {
  lastView = view;
  // keep the frame frozen mid-drag so the geometry does not slide
  // under the pointer as solves land
  if (!dragging || !transform) {
    transform = fitTransform(view, canvas.width, canvas.height);
    transform.height = canvas.height;
  }
  draw(ctx, view, transform, canvas.width);

  banner.textContent = view.banner ?? "";
  banner.style.display = view.banner ? "block" : "none";

  const feasible = feasibleEntries(view.entries);
  const primary = feasible[feasible.length - 1];
  if (primary) {
    const pieces = [`theta = ${formatCoord(primary.theta)}`];
    if (view.junctionLabel) pieces.push(`B0 = ${view.junctionLabel}`);
    pieces.push(`${feasible.length} member(s)`);
    if (view.solving) pieces.push("solving...");
    status.textContent = pieces.join("   ");
  } else {
    status.textContent = view.solving ? "solving..." : "no curve";
  }

  exportJsonBtn.disabled = !view.exportEnabled;
  exportSvgBtn.disabled = !view.exportEnabled;
  alphaReadout.textContent = view.alpha0.toFixed(3);
}

const session = new DesignSession(scene => client.solve(scene), redraw);

client
  .limits()
  .then(limits => {
    alphaSlider.max = String(limits.alpha0_max);
    session.setAlphaMax(limits.alpha0_max);
  })
  .catch(() => {
    banner.textContent = `solve service unreachable at ${serviceUrl}`;
    banner.style.display = "block";
  });

presetSelect.addEventListener("change", () => session.loadPreset(presetSelect.value));
kindSelect.addEventListener("change", () => session.setKind(kindSelect.value as Kind));
branchSelect.addEventListener("change", () => session.setBranch(branchSelect.value as Branch));
alphaSlider.addEventListener("input", () => session.setAlpha0(Number(alphaSlider.value)));
sweepBox.addEventListener("change", () => session.setSweep(sweepBox.checked));
combBox.addEventListener("change", () => session.setOverlay("comb", combBox.checked));
polygonBox.addEventListener("change", () => session.setOverlay("controlPolygon", polygonBox.checked));

function download(filename: string, text: string, type: string): void {
  const blob = new Blob([text], { type });
  const url = URL.createObjectURL(blob);
  const a = document.createElement("a");
  a.href = url;
  a.download = filename;
  a.click();
  URL.revokeObjectURL(url);
}

exportJsonBtn.addEventListener("click", () => {
  const payload = session.exportPayload();
  if (payload) download(payload.filename, payload.json, "application/json");
});

exportSvgBtn.addEventListener("click", () => {
  if (!lastView || !lastView.exportEnabled) return;
  download("transition.svg", exportSvg(lastView.scene, lastView.entries), "image/svg+xml");
});

function pointerWorld(event: PointerEvent): Pt {
  const rect = canvas.getBoundingClientRect();
  const screen: Pt = [
    ((event.clientX - rect.left) * canvas.width) / rect.width,
    ((event.clientY - rect.top) * canvas.height) / rect.height,
  ];
  return toWorld(transform!, screen);
}

canvas.addEventListener("pointerdown", event => {
  if (!lastView || !transform) return;
  const rect = canvas.getBoundingClientRect();
  const screen: Pt = [
    ((event.clientX - rect.left) * canvas.width) / rect.width,
    ((event.clientY - rect.top) * canvas.height) / rect.height,
  ];
  dragging = hitTest(lastView.scene, transform, screen);
  if (dragging) canvas.setPointerCapture(event.pointerId);
});

canvas.addEventListener("pointermove", event => {
  if (!dragging || !lastView || !transform) return;
  const world = pointerWorld(event);
  if (dragging.kind === "circle-move") {
    session.moveCircle(dragging.index as 0 | 1, world);
  } else if (dragging.kind === "circle-radius") {
    const c = lastView.scene.circles[dragging.index]!;
    session.setRadius(dragging.index as 0 | 1, Math.hypot(world[0] - c.center[0], world[1] - c.center[1]));
  } else {
    session.movePoint(world);
  }
});

canvas.addEventListener("pointerup", event => {
  if (dragging) canvas.releasePointerCapture(event.pointerId);
  dragging = null;
  if (lastView) redraw(lastView);
});

session.loadPreset("s-demo");
presetSelect.value = "s-demo";
