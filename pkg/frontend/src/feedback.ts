/** Feedback bar semantics.
 *
 * The bar shows the running fidelity the service reports; its color bands are
 * the level's own star thresholds, with the same boundary rule the scorer
 * uses for stars (a value equal to a threshold counts as reaching it):
 * red below F1, yellow from F1 up to but not including F2, green from F2.
 */

export type BarColor = "red" | "yellow" | "green";

export function feedbackColor(
  thresholds: readonly [number, number, number],
  fidelity: number,
): BarColor {
  const [f1, f2] = thresholds;
  if (fidelity < f1) {
    return "red";
  }
  if (fidelity < f2) {
    return "yellow";
  }
  return "green";
}

export function starsFor(
  thresholds: readonly [number, number, number],
  fidelity: number,
): number {
  let stars = 0;
  for (const threshold of thresholds) {
    if (fidelity >= threshold) {
      stars += 1;
    }
  }
  return stars;
}

export interface BarModel {
  /** Fill fraction in [0, 1]. */
  fraction: number;
  color: BarColor;
}

export function barModel(
  thresholds: readonly [number, number, number],
  fidelity: number,
): BarModel {
  return {
    fraction: Math.min(1, Math.max(0, fidelity)),
    color: feedbackColor(thresholds, fidelity),
  };
}
