// View state and its pure transitions. Rendering is a function of
// (fetched data, ViewState); replaying the same transitions on the same
// data must reproduce identical data bindings.

export type Method = "mds" | "isomap" | "tsne";

export interface ViewState {
  method: Method;
  /** up to two ids, ordered: [primary, comparison] */
  selection: string[];
  /** cycles with persistence below this are hidden */
  cycleThreshold: number;
  /** inclusive rank range into the ascending sorted diff, or null = all */
  diffBand: [number, number] | null;
  /** opacity of pixels excluded by the band */
  excludedAlpha: number;
}

export function initialState(method: Method = "isomap"): ViewState {
  return {
    method,
    selection: [],
    cycleThreshold: 0,
    diffBand: null,
    excludedAlpha: 0.15,
  };
}

export function setMethod(s: ViewState, method: Method): ViewState {
  return { ...s, method };
}

/** First click picks the primary, the second the comparison, and any
 * further click replaces the comparison. Clicking a selected item again
 * keeps the selection unchanged. */
export function clickItem(s: ViewState, id: string): ViewState {
  if (s.selection.includes(id)) return s;
  if (s.selection.length === 0) return { ...s, selection: [id] };
  if (s.selection.length === 1) return { ...s, selection: [s.selection[0], id] };
  return { ...s, selection: [s.selection[0], id], diffBand: null };
}

export function clearSelection(s: ViewState): ViewState {
  return { ...s, selection: [], diffBand: null };
}

export function setCycleThreshold(s: ViewState, tau: number): ViewState {
  return { ...s, cycleThreshold: Math.min(1, Math.max(0, tau)) };
}

export function setDiffBand(
  s: ViewState,
  lo: number,
  hi: number,
  n: number,
): ViewState {
  const a = Math.max(0, Math.min(n - 1, Math.round(Math.min(lo, hi))));
  const b = Math.max(0, Math.min(n - 1, Math.round(Math.max(lo, hi))));
  return { ...s, diffBand: [a, b] };
}

export function clearDiffBand(s: ViewState): ViewState {
  return { ...s, diffBand: null };
}
