// Client-side sampling of the quartic control points returned by the
// service.  This is presentation math only (polylines and curvature
// combs); the solving happened on the server.

import type { Pt } from "./model.js";

export function deCasteljau(net: readonly Pt[], t: number): Pt {
  let layer = net.map(p => [p[0], p[1]] as [number, number]);
  while (layer.length > 1) {
    const next: [number, number][] = [];
    for (let i = 0; i + 1 < layer.length; i++) {
      const a = layer[i]!;
      const b = layer[i + 1]!;
      next.push([a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t]);
    }
    layer = next;
  }
  return layer[0]!;
}

// degree-n net -> degree-(n-1) net of the derivative
export function derivativeNet(net: readonly Pt[]): Pt[] {
  const n = net.length - 1;
  const out: Pt[] = [];
  for (let i = 0; i < n; i++) {
    const a = net[i]!;
    const b = net[i + 1]!;
    out.push([n * (b[0] - a[0]), n * (b[1] - a[1])]);
  }
  return out;
}

export function samplePolyline(net: readonly Pt[], samples: number): Pt[] {
  const pts: Pt[] = [];
  for (let i = 0; i < samples; i++) {
    pts.push(deCasteljau(net, i / (samples - 1)));
  }
  return pts;
}

export function signedCurvature(net: readonly Pt[], t: number): number {
  const d1net = derivativeNet(net);
  const d2net = derivativeNet(d1net);
  const d1 = deCasteljau(d1net, t);
  const d2 = deCasteljau(d2net, t);
  const speed = Math.hypot(d1[0], d1[1]);
  if (speed === 0) return 0;
  return (d1[0] * d2[1] - d1[1] * d2[0]) / (speed * speed * speed);
}

export interface CombWhisker {
  base: Pt;
  tip: Pt;
}

// Normal whiskers with length proportional to |curvature|, drawn on the
// side the curve bends away from, like the server-side render.
export function curvatureComb(net: readonly Pt[], samples: number, scale: number): CombWhisker[] {
  const d1net = derivativeNet(net);
  const stride = Math.max(1, Math.floor(samples / 32));
  const whiskers: CombWhisker[] = [];
  for (let i = 0; i < samples; i += stride) {
    const t = i / (samples - 1);
    const base = deCasteljau(net, t);
    const d1 = deCasteljau(d1net, t);
    const speed = Math.hypot(d1[0], d1[1]);
    if (speed === 0) continue;
    const normal: Pt = [-d1[1] / speed, d1[0] / speed];
    const k = signedCurvature(net, t);
    whiskers.push({
      base,
      tip: [base[0] - normal[0] * scale * k, base[1] - normal[1] * scale * k],
    });
  }
  return whiskers;
}

export function peakCurvature(nets: readonly (readonly Pt[])[], samples: number): number {
  let peak = 0;
  for (const net of nets) {
    for (let i = 0; i < samples; i++) {
      peak = Math.max(peak, Math.abs(signedCurvature(net, i / (samples - 1))));
    }
  }
  return peak;
}
