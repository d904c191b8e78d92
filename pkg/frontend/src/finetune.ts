/** FineTune editing tools: point drag, time stretch, smoothing, resampling.
 *
 * These are pure path arithmetic and run client-side; the service applies the
 * same rules, so an edited path round-trips through POST /v1/plays untouched.
 * Every reshaping tool returns a new path with origin "edited" — resampling
 * keeps the origin because it only changes the representation. Physics and
 * scores still come exclusively from the service.
 */

import { makePath, interpolatePath, pathDuration, type ControlPath } from "./path.js";
import type { ControlSample, TweezerSpecPayload } from "./types.js";

/** Linear resample onto a uniform grid of `rate` samples per time unit.
 *
 * Both endpoints (t = 0 and t = duration) are always kept exactly.
 */
export function resample(path: ControlPath, rate: number): ControlPath {
  if (!(rate > 0)) {
    throw new Error(`rate must be positive, got ${rate}`);
  }
  const duration = pathDuration(path);
  const n = Math.floor(duration * rate + 1e-9);
  const times: number[] = [];
  for (let i = 0; i <= n; i++) {
    times.push(i / rate);
  }
  if (Math.abs(times[times.length - 1] - duration) <= 1e-9 * Math.max(1, duration)) {
    times[times.length - 1] = duration;
  } else {
    times.push(duration);
  }
  const samples = times.map((t) => ({ t, ...interpolatePath(path, t) }));
  return makePath(samples, path.origin);
}

function checkBounds(spec: TweezerSpecPayload, sample: ControlSample): void {
  if (!(spec.x_min <= sample.x0 && sample.x0 <= spec.x_max)) {
    throw new Error(`x0=${sample.x0} outside tweezer bounds [${spec.x_min}, ${spec.x_max}]`);
  }
  if (!(0 <= sample.amplitude && sample.amplitude <= spec.depth_max)) {
    throw new Error(`amplitude=${sample.amplitude} outside [0, ${spec.depth_max}]`);
  }
}

/** Replace one knot, keeping time ordering (and bounds when a spec is given). */
export function movePoint(
  path: ControlPath,
  index: number,
  next: ControlSample,
  spec?: TweezerSpecPayload,
): ControlPath {
  const samples = path.samples;
  const n = samples.length;
  if (!(index >= 0 && index < n)) {
    throw new Error(`index ${index} out of range for ${n} samples`);
  }
  if (index === 0 && next.t !== 0) {
    throw new Error(`first sample must stay at t=0, got t=${next.t}`);
  }
  if (index > 0 && next.t <= samples[index - 1].t) {
    throw new Error(
      `t=${next.t} does not stay after the previous sample at t=${samples[index - 1].t}`,
    );
  }
  if (index < n - 1 && next.t >= samples[index + 1].t) {
    throw new Error(
      `t=${next.t} does not stay before the next sample at t=${samples[index + 1].t}`,
    );
  }
  if (spec !== undefined) {
    checkBounds(spec, next);
  }
  const edited = samples.map((s, i) => (i === index ? { ...next } : { ...s }));
  return makePath(edited, "edited");
}

/** Scale every sample time by `factor` (> 0). */
export function stretchTime(path: ControlPath, factor: number): ControlPath {
  if (!(factor > 0)) {
    throw new Error(`factor must be positive, got ${factor}`);
  }
  const samples = path.samples.map((s) => ({ ...s, t: s.t * factor }));
  return makePath(samples, "edited");
}

/** Moving-average x0 and amplitude; locked samples stay bit-identical.
 *
 * The window must be odd and >= 3; it shrinks near the ends. Locked samples
 * keep their values but still participate in their neighbors' averages.
 * Times are never touched.
 */
export function smooth(
  path: ControlPath,
  window = 5,
  locked: Iterable<number> = [],
): ControlPath {
  if (window < 3 || window % 2 === 0) {
    throw new Error(`window must be odd and >= 3, got ${window}`);
  }
  const samples = path.samples;
  const n = samples.length;
  const lockedSet = new Set(locked);
  for (const i of lockedSet) {
    if (!(i >= 0 && i < n)) {
      throw new Error(`locked index ${i} out of range for ${n} samples`);
    }
  }
  const half = Math.floor(window / 2);
  const mean = (values: number[], lo: number, hi: number): number => {
    let sum = 0;
    for (let i = lo; i < hi; i++) {
      sum += values[i];
    }
    return sum / (hi - lo);
  };
  const x0 = samples.map((s) => s.x0);
  const amplitude = samples.map((s) => s.amplitude);
  const edited = samples.map((s, i) => {
    if (lockedSet.has(i)) {
      return { ...s };
    }
    const lo = Math.max(0, i - half);
    const hi = Math.min(n, i + half + 1);
    return { t: s.t, x0: mean(x0, lo, hi), amplitude: mean(amplitude, lo, hi) };
  });
  return makePath(edited, "edited");
}
