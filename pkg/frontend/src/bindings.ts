// Pure data-binding computations shared by the views and the headless
// replay tests. The only numeric work here is classification against the
// server-provided sorted diffs; nothing is recomputed client-side.

import type { Cycle, DiffEntry } from "./api.js";

/** Cycles surviving the persistence slider: persistence >= tau. */
export function visibleCycles(cycles: Cycle[], tau: number): Cycle[] {
  return cycles.filter((c) => c.persistence >= tau);
}

/** Red anchor shared by the juxtaposed heatmaps: the max pixel across the
 * selected images. */
export function sharedMax(images: number[][]): number {
  let m = 0;
  for (const px of images) for (const v of px) if (v > m) m = v;
  return m;
}

/** Per-pixel opacity from an inclusive rank range into the sorted diffs.
 * Pixels whose rank falls outside the band get the excluded alpha; a null
 * band leaves everything opaque. */
export function opacityFromBand(
  sorted: DiffEntry[],
  band: [number, number] | null,
  excludedAlpha: number,
): Float64Array {
  const alphas = new Float64Array(sorted.length).fill(1);
  if (band === null) return alphas;
  const [lo, hi] = band;
  for (let rank = 0; rank < sorted.length; rank++) {
    alphas[sorted[rank].index] = rank >= lo && rank <= hi ? 1 : excludedAlpha;
  }
  return alphas;
}

/** Diff values at the band's ends: the [t_min, t_max] the user selected. */
export function bandValues(
  sorted: DiffEntry[],
  band: [number, number],
): [number, number] {
  return [sorted[band[0]].diff, sorted[band[1]].diff];
}

export function isNonDecreasing(sorted: DiffEntry[]): boolean {
  for (let i = 1; i < sorted.length; i++) {
    if (sorted[i].diff < sorted[i - 1].diff) return false;
  }
  return true;
}

export interface Extent {
  min: number;
  max: number;
}

export function extentOf(values: number[], pad = 0.05): Extent {
  let min = Infinity;
  let max = -Infinity;
  for (const v of values) {
    if (v < min) min = v;
    if (v > max) max = v;
  }
  if (!isFinite(min)) return { min: 0, max: 1 };
  const span = max - min || 1;
  return { min: min - pad * span, max: max + pad * span };
}

export function scaleLinear(domain: Extent, range: [number, number]) {
  const k = (range[1] - range[0]) / (domain.max - domain.min || 1);
  return (v: number) => range[0] + (v - domain.min) * k;
}
