// Wire types for the solve service, plus the presets the designer ships
// with.  The designer never computes junction frames or turning angles
// itself: everything displayed comes back from POST /v1/solve.

export type Kind = "point_circle" | "s_shape" | "c_shape";
export type Branch = "left" | "right";

export type Pt = readonly [number, number];

export interface CircleSpec {
  center: Pt;
  radius: number;
}

export interface Scene {
  kind: Kind;
  point?: Pt;
  circles: CircleSpec[];
  alpha0: number | number[];
  branch: Branch;
}

export function sceneBody(scene: Scene): string {
  const body: Record<string, unknown> = {
    schema: "spiralkit-scene/1",
    kind: scene.kind,
    circles: scene.circles.map(c => ({ center: [c.center[0], c.center[1]], radius: c.radius })),
    alpha0: scene.alpha0,
    branch: scene.branch,
  };
  if (scene.kind === "point_circle") {
    const p = scene.point ?? [0, 0];
    body.point = [p[0], p[1]];
  }
  return JSON.stringify(body);
}

export interface ContactResidual {
  position: number;
  tangent: number;
  curvature: number;
}

export interface Residuals {
  junction_gap: number;
  junction_tangent_dot: number | null;
  junction_curvatures: number[];
  contacts: ContactResidual[];
}

export interface FeasibleEntry {
  alpha0: number;
  feasible: true;
  theta: number;
  b0: Pt;
  t0: Pt;
  t1: Pt;
  f1: Pt | null;
  spirals: Pt[][];
  residuals: Residuals;
}

export interface InfeasibleEntry {
  alpha0: number;
  feasible: false;
  reason: string;
}

export type ResultEntry = FeasibleEntry | InfeasibleEntry;

export interface ResultDocument {
  schema: string;
  entries: ResultEntry[];
  scene: unknown;
}

// Outcome of one solve round-trip.  "rejected" is a 400 from the
// service (bad scene), "unreachable" is a transport failure; both keep
// the last good view on screen.
export type SolveOutcome =
  | { kind: "ok"; document: ResultDocument; raw: string }
  | { kind: "rejected"; code: string; message: string; path: string }
  | { kind: "unreachable"; message: string };

export function feasibleEntries(entries: ResultEntry[]): FeasibleEntry[] {
  return entries.filter((e): e is FeasibleEntry => e.feasible);
}

const PRECISION = 7;

export function formatCoord(x: number): string {
  if (!Number.isFinite(x)) return String(x);
  const s = x.toPrecision(PRECISION);
  return s.includes(".") ? s.replace(/\.?0+$/, "") : s;
}

export function formatPoint(p: Pt): string {
  return `(${formatCoord(p[0])}, ${formatCoord(p[1])})`;
}

export interface Preset {
  label: string;
  scene: Scene;
}

export const PRESETS: Record<string, Preset> = {
  "s-demo": {
    label: "S-shape demo",
    scene: {
      kind: "s_shape",
      circles: [
        { center: [10, 7], radius: 5 },
        { center: [0, 0], radius: 2 },
      ],
      alpha0: 0.32,
      branch: "left",
    },
  },
  "c-demo": {
    label: "C-shape demo",
    scene: {
      kind: "c_shape",
      circles: [
        { center: [20, 0], radius: 5 },
        { center: [0, 0], radius: 2 },
      ],
      alpha0: 0.32,
      branch: "left",
    },
  },
  "point-demo": {
    label: "Point to circle demo",
    scene: {
      kind: "point_circle",
      point: [0, 0],
      circles: [{ center: [13, 15.198684153570664], radius: 5 }],
      alpha0: 0.32,
      branch: "left",
    },
  },
};

export const DEFAULT_PRESET = "s-demo";

export function cloneScene(scene: Scene): Scene {
  return {
    kind: scene.kind,
    point: scene.point ? [scene.point[0], scene.point[1]] : undefined,
    circles: scene.circles.map(c => ({ center: [c.center[0], c.center[1]] as Pt, radius: c.radius })),
    alpha0: Array.isArray(scene.alpha0) ? [...scene.alpha0] : scene.alpha0,
    branch: scene.branch,
  };
}
