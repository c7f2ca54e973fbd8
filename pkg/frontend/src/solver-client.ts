// HTTP client for the solve service and the request scheduler that
// keeps drag interactions inside the rate budget.

import type { Scene, SolveOutcome, ResultDocument } from "./model.js";
import { sceneBody } from "./model.js";

export interface Limits {
  alpha0_max: number;
  theta_max: number;
}

export class SolveClient {
  constructor(readonly baseUrl: string) {}

  async limits(): Promise<Limits> {
    const resp = await fetch(this.baseUrl + "/v1/limits");
    if (!resp.ok) throw new Error(`limits: HTTP ${resp.status}`);
    return (await resp.json()) as Limits;
  }

  async solve(scene: Scene): Promise<SolveOutcome> {
    let resp: Response;
    try {
      resp = await fetch(this.baseUrl + "/v1/solve", {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: sceneBody(scene),
      });
    } catch (err) {
      return { kind: "unreachable", message: `solve service unreachable: ${String(err)}` };
    }
    const raw = await resp.text();
    if (resp.status === 400) {
      try {
        const error = (JSON.parse(raw) as { error: { code: string; message: string; path: string } }).error;
        return { kind: "rejected", code: error.code, message: error.message, path: error.path };
      } catch {
        return { kind: "rejected", code: "bad-response", message: raw, path: "$" };
      }
    }
    if (!resp.ok) {
      return { kind: "unreachable", message: `solve service error: HTTP ${resp.status}` };
    }
    // keep the exact bytes: exports must round-trip through the
    // service's canonical form untouched
    return { kind: "ok", document: JSON.parse(raw) as ResultDocument, raw };
  }
}

type Job = { scene: Scene; version: number };

// Trailing-edge scheduler: at most one request in flight, at most one
// fire per debounce window, and a response is applied only while its
// scene version is still the latest.  Superseded responses are dropped
// on the floor.
export class SolveScheduler {
  private version = 0;
  private applied = 0;
  private pending: Job | null = null;
  private inflight = false;
  private lastFire = -Infinity;
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly post: (scene: Scene) => Promise<SolveOutcome>,
    private readonly apply: (outcome: SolveOutcome, version: number) => void,
    private readonly debounceMs = 100,
  ) {}

  submit(scene: Scene): number {
    this.version += 1;
    this.pending = { scene, version: this.version };
    this.schedule();
    return this.version;
  }

  latestVersion(): number {
    return this.version;
  }

  idle(): boolean {
    return this.pending === null && !this.inflight && this.timer === null;
  }

  private schedule(): void {
    if (this.timer !== null || this.inflight || this.pending === null) return;
    const wait = Math.max(0, this.lastFire + this.debounceMs - Date.now());
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.fire();
    }, wait);
  }

  private async fire(): Promise<void> {
    if (this.inflight || this.pending === null) return;
    const job = this.pending;
    this.pending = null;
    this.inflight = true;
    this.lastFire = Date.now();
    let outcome: SolveOutcome;
    try {
      outcome = await this.post(job.scene);
    } catch (err) {
      this.inflight = false;
      this.schedule();
      throw err;
    }
    // flip inflight before applying so the view built inside apply()
    // already reports an idle scheduler
    this.inflight = false;
    if (job.version === this.version && job.version > this.applied) {
      this.applied = job.version;
      this.apply(outcome, job.version);
    }
    this.schedule();
  }
}
