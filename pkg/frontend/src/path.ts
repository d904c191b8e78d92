/** Control paths on the client side: validation, interpolation, wire format.
 *
 * The shape and invariants mirror the service exactly — at least two knots,
 * strictly increasing times starting at t = 0 — so anything built here is
 * accepted by POST /v1/plays without a round trip.
 */

import type { ControlSample, PathOrigin, PathPayload } from "./types.js";

export interface ControlPath {
  samples: ControlSample[];
  origin: PathOrigin;
}

/** Build a path, enforcing the knot invariants. Throws Error on violation. */
export function makePath(samples: ControlSample[], origin: PathOrigin = "human"): ControlPath {
  if (samples.length < 2) {
    throw new Error(`a path needs at least 2 samples, got ${samples.length}`);
  }
  if (samples[0].t !== 0) {
    throw new Error(`first sample must be at t=0, got t=${samples[0].t}`);
  }
  for (let i = 1; i < samples.length; i++) {
    if (samples[i].t <= samples[i - 1].t) {
      throw new Error("sample times must be strictly increasing");
    }
  }
  return { samples: samples.map((s) => ({ ...s })), origin };
}

export function pathDuration(path: ControlPath): number {
  return path.samples[path.samples.length - 1].t;
}

/** Piecewise-linear (x0, amplitude) at time t, clamped to the path's ends. */
export function interpolatePath(path: ControlPath, t: number): { x0: number; amplitude: number } {
  const samples = path.samples;
  if (t <= samples[0].t) {
    return { x0: samples[0].x0, amplitude: samples[0].amplitude };
  }
  const last = samples[samples.length - 1];
  if (t >= last.t) {
    return { x0: last.x0, amplitude: last.amplitude };
  }
  let hi = 1;
  while (samples[hi].t < t) hi++;
  if (samples[hi].t === t) {
    return { x0: samples[hi].x0, amplitude: samples[hi].amplitude };
  }
  const lo = samples[hi - 1];
  const w = (t - lo.t) / (samples[hi].t - lo.t);
  return {
    x0: lo.x0 + w * (samples[hi].x0 - lo.x0),
    amplitude: lo.amplitude + w * (samples[hi].amplitude - lo.amplitude),
  };
}

/** The JSON form POST /v1/plays and /v1/preview expect. */
export function pathPayload(path: ControlPath): PathPayload {
  return {
    t: path.samples.map((s) => s.t),
    x0: path.samples.map((s) => s.x0),
    amplitude: path.samples.map((s) => s.amplitude),
    origin: path.origin,
  };
}

export function pathFromPayload(payload: PathPayload): ControlPath {
  const samples = payload.t.map((t, i) => ({
    t,
    x0: payload.x0[i],
    amplitude: payload.amplitude[i],
  }));
  return makePath(samples, payload.origin);
}
