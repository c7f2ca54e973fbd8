// Designer state.  Owns the editable geometry, funnels every change
// through the scheduler, and keeps the last completed solve for the
// current scene on screen.  No DOM in here so the contract is testable
// headless.

import type { CircleSpec, Pt, ResultEntry, Scene, SolveOutcome } from "./model.js";
import {
  DEFAULT_PRESET,
  PRESETS,
  cloneScene,
  feasibleEntries,
  formatPoint,
} from "./model.js";
import type { Branch, Kind } from "./model.js";
import { SolveScheduler } from "./solver-client.js";

export interface Overlays {
  comb: boolean;
  controlPolygon: boolean;
}

export interface ViewState {
  scene: Scene;
  entries: ResultEntry[];
  raw: string | null;
  banner: string | null;
  junctionLabel: string | null;
  exportEnabled: boolean;
  solving: boolean;
  sweep: boolean;
  overlays: Overlays;
  alpha0: number;
}

const SWEEP_STEPS = 5;
const SWEEP_LO = 0.1;

export function sweepValues(alpha0: number): number[] {
  const lo = Math.min(SWEEP_LO, alpha0 / 2);
  const values: number[] = [];
  for (let i = 0; i < SWEEP_STEPS - 1; i++) {
    values.push(lo + ((alpha0 - lo) * i) / (SWEEP_STEPS - 1));
  }
  values.push(alpha0);
  return values;
}

export class DesignSession {
  private point: Pt = [0, 0];
  private circles: [CircleSpec, CircleSpec];
  private kind: Kind;
  private branch: Branch;
  private alpha0: number;
  private alphaMax = 0.32;
  private sweep = false;
  private overlays: Overlays = { comb: true, controlPolygon: false };

  private entries: ResultEntry[] = [];
  private raw: string | null = null;
  private banner: string | null = null;

  private readonly scheduler: SolveScheduler;

  constructor(
    post: (scene: Scene) => Promise<SolveOutcome>,
    private readonly onUpdate: (view: ViewState) => void,
    debounceMs = 100,
  ) {
    this.scheduler = new SolveScheduler(post, outcome => this.applyOutcome(outcome), debounceMs);
    const preset = cloneScene(PRESETS[DEFAULT_PRESET]!.scene);
    this.kind = preset.kind;
    this.branch = preset.branch;
    this.alpha0 = typeof preset.alpha0 === "number" ? preset.alpha0 : 0.32;
    this.circles = [
      preset.circles[0] ?? { center: [0, 0], radius: 2 },
      preset.circles[1] ?? { center: [8, 0], radius: 2 },
    ];
    if (preset.point) this.point = preset.point;
  }

  scene(): Scene {
    const alpha0 = this.sweep ? sweepValues(this.alpha0) : this.alpha0;
    if (this.kind === "point_circle") {
      return {
        kind: this.kind,
        point: [this.point[0], this.point[1]],
        circles: [this.circles[0]].map(c => ({ center: [c.center[0], c.center[1]] as Pt, radius: c.radius })),
        alpha0,
        branch: this.branch,
      };
    }
    return {
      kind: this.kind,
      circles: this.circles.map(c => ({ center: [c.center[0], c.center[1]] as Pt, radius: c.radius })),
      alpha0,
      branch: this.branch,
    };
  }

  view(): ViewState {
    const feasible = feasibleEntries(this.entries);
    const first = feasible[0];
    return {
      scene: this.scene(),
      entries: this.entries,
      raw: this.raw,
      banner: this.banner,
      junctionLabel: first ? formatPoint(first.b0) : null,
      exportEnabled: feasible.length > 0 && this.raw !== null,
      solving: !this.scheduler.idle(),
      sweep: this.sweep,
      overlays: { ...this.overlays },
      alpha0: this.alpha0,
    };
  }

  loadPreset(name: string): void {
    const preset = PRESETS[name];
    if (!preset) return;
    const scene = cloneScene(preset.scene);
    this.kind = scene.kind;
    this.branch = scene.branch;
    this.alpha0 = typeof scene.alpha0 === "number" ? scene.alpha0 : 0.32;
    this.sweep = false;
    if (scene.point) this.point = scene.point;
    const a = scene.circles[0];
    if (a) this.circles[0] = a;
    const b = scene.circles[1];
    if (b) this.circles[1] = b;
    this.resolve();
  }

  setKind(kind: Kind): void {
    this.kind = kind;
    this.resolve();
  }

  setBranch(branch: Branch): void {
    this.branch = branch;
    this.resolve();
  }

  setAlphaMax(max: number): void {
    this.alphaMax = max;
    if (this.alpha0 > max) {
      this.alpha0 = max;
      this.resolve();
    }
  }

  setAlpha0(value: number): void {
    // keep the slider inside the solver's certified range
    this.alpha0 = Math.min(Math.max(value, 0.005), this.alphaMax);
    this.resolve();
  }

  setSweep(on: boolean): void {
    this.sweep = on;
    this.resolve();
  }

  setOverlay(flag: keyof Overlays, on: boolean): void {
    this.overlays[flag] = on;
    this.onUpdate(this.view());
  }

  moveCircle(index: 0 | 1, center: Pt): void {
    this.circles[index] = { center: [center[0], center[1]], radius: this.circles[index].radius };
    this.resolve();
  }

  setRadius(index: 0 | 1, radius: number): void {
    if (!(radius > 0)) return;
    this.circles[index] = { center: this.circles[index].center, radius };
    this.resolve();
  }

  movePoint(p: Pt): void {
    this.point = [p[0], p[1]];
    this.resolve();
  }

  exportPayload(): { json: string; filename: string } | null {
    const v = this.view();
    if (!v.exportEnabled || this.raw === null) return null;
    return { json: this.raw, filename: "transition-result.json" };
  }

  private resolve(): void {
    this.scheduler.submit(this.scene());
    this.onUpdate(this.view());
  }

  private applyOutcome(outcome: SolveOutcome): void {
    if (outcome.kind === "ok") {
      this.entries = outcome.document.entries;
      this.raw = outcome.raw;
      const feasible = feasibleEntries(this.entries);
      if (feasible.length === 0) {
        const firstBad = this.entries.find(e => !e.feasible);
        this.banner = firstBad && !firstBad.feasible ? firstBad.reason : "no feasible entries";
      } else {
        this.banner = null;
      }
    } else {
      // keep the last good view, surface the failure
      this.banner = outcome.message;
    }
    this.onUpdate(this.view());
  }
}
