/** Least-squares slope fitting for convergence-order estimates. */

export interface SlopeFit {
  slope: number;
  points: number;
}

/** Plain least-squares slope of y against x. */
export function leastSquaresSlope(xs: number[], ys: number[]): number {
  if (xs.length !== ys.length || xs.length < 2) {
    throw new Error(`need at least two matched points, got ${xs.length}/${ys.length}`);
  }
  const n = xs.length;
  const mx = xs.reduce((a, b) => a + b, 0) / n;
  const my = ys.reduce((a, b) => a + b, 0) / n;
  let num = 0;
  let den = 0;
  for (let i = 0; i < n; i++) {
    num += (xs[i]! - mx) * (ys[i]! - my);
    den += (xs[i]! - mx) * (xs[i]! - mx);
  }
  if (den === 0) {
    throw new Error("degenerate abscissa: all x values coincide");
  }
  return num / den;
}

/**
 * Convergence order from (tau, error) samples: the slope of log error
 * against log tau. Non-finite or non-positive samples (diverged or
 * exactly-zero cells) are dropped; returns null when fewer than two
 * usable points remain.
 */
export function fitOrder(taus: number[], errors: number[]): SlopeFit | null {
  const xs: number[] = [];
  const ys: number[] = [];
  for (let i = 0; i < taus.length; i++) {
    const t = taus[i]!;
    const e = errors[i]!;
    if (Number.isFinite(t) && Number.isFinite(e) && t > 0 && e > 0) {
      xs.push(Math.log(t));
      ys.push(Math.log(e));
    }
  }
  if (xs.length < 2) return null;
  return { slope: leastSquaresSlope(xs, ys), points: xs.length };
}
