/** Pure drawing geometry: world-value arrays to canvas polylines.
 *
 * Nothing here simulates anything. Densities come from the service; this
 * module only evaluates the well shape for the landscape line (the same
 * -depth * exp(-(x-x0)^2 / (2 sigma^2)) curve the service documents) and
 * projects arrays onto pixel coordinates.
 */

import type { Viewport } from "./control.js";

/** Raw values of -depth * exp(-(x-center)^2 / (2 width^2)) on the grid. */
export function gaussianWell(
  xs: readonly number[],
  center: number,
  depth: number,
  width: number,
): number[] {
  return xs.map((x) => -depth * Math.exp(-((x - center) ** 2) / (2 * width ** 2)));
}

/** The potential landscape to draw: static background plus the live tweezer. */
export function landscapeValues(
  staticPotential: readonly number[],
  xs: readonly number[],
  x0: number,
  amplitude: number,
  sigma: number,
): number[] {
  if (amplitude === 0) {
    return [...staticPotential];
  }
  const well = gaussianWell(xs, x0, amplitude, sigma);
  return staticPotential.map((v, i) => v + well[i]);
}

export interface ValueRange {
  lo: number;
  hi: number;
}

/** Value range covering all given arrays, padded so lines stay off the edges. */
export function valueRange(arrays: readonly (readonly number[])[], pad = 0.05): ValueRange {
  let lo = Infinity;
  let hi = -Infinity;
  for (const values of arrays) {
    for (const v of values) {
      lo = Math.min(lo, v);
      hi = Math.max(hi, v);
    }
  }
  if (!(lo < hi)) {
    hi = lo + 1;
  }
  const margin = (hi - lo) * pad;
  return { lo: lo - margin, hi: hi + margin };
}

export type Polyline = Array<[number, number]>;

/** Project (x, value) pairs to canvas pixels; larger values sit higher. */
export function polyline(
  xs: readonly number[],
  values: readonly number[],
  viewport: Viewport,
  range: ValueRange,
): Polyline {
  const span = range.hi - range.lo;
  return xs.map((x, i) => [
    viewport.pixelX(x),
    viewport.height * (1 - (values[i] - range.lo) / span),
  ]);
}

/** Mean position of a density sampled on xs — where the "ball" view draws. */
export function densityMean(xs: readonly number[], density: readonly number[]): number {
  let mass = 0;
  let moment = 0;
  for (let i = 0; i < xs.length; i++) {
    mass += density[i];
    moment += xs[i] * density[i];
  }
  return mass > 0 ? moment / mass : 0;
}
