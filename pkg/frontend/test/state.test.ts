import { describe, expect, it } from "vitest";

import {
  clearDiffBand,
  clearSelection,
  clickItem,
  initialState,
  setCycleThreshold,
  setDiffBand,
  setMethod,
} from "../src/state.js";

describe("selection rotation", () => {
  it("first click selects the primary", () => {
    const s = clickItem(initialState(), "a");
    expect(s.selection).toEqual(["a"]);
  });

  it("second click selects the comparison", () => {
    const s = clickItem(clickItem(initialState(), "a"), "b");
    expect(s.selection).toEqual(["a", "b"]);
  });

  it("third click replaces the comparison and resets the band", () => {
    let s = clickItem(clickItem(initialState(), "a"), "b");
    s = setDiffBand(s, 90, 99, 100);
    s = clickItem(s, "c");
    expect(s.selection).toEqual(["a", "c"]);
    expect(s.diffBand).toBeNull();
  });

  it("clicking a selected item is a no-op", () => {
    const s = clickItem(clickItem(initialState(), "a"), "b");
    expect(clickItem(s, "a")).toBe(s);
    expect(clickItem(s, "b")).toBe(s);
  });

  it("clear empties selection and band", () => {
    let s = clickItem(clickItem(initialState(), "a"), "b");
    s = setDiffBand(s, 0, 10, 100);
    s = clearSelection(s);
    expect(s.selection).toEqual([]);
    expect(s.diffBand).toBeNull();
  });
});

describe("cycle threshold", () => {
  it("clamps into [0, 1]", () => {
    expect(setCycleThreshold(initialState(), -0.5).cycleThreshold).toBe(0);
    expect(setCycleThreshold(initialState(), 1.5).cycleThreshold).toBe(1);
    expect(setCycleThreshold(initialState(), 0.5).cycleThreshold).toBe(0.5);
  });
});

describe("diff band", () => {
  it("orders and clamps the rank range", () => {
    const s = setDiffBand(initialState(), 99, 90, 100);
    expect(s.diffBand).toEqual([90, 99]);
    expect(setDiffBand(initialState(), -5, 200, 100).diffBand).toEqual([0, 99]);
  });

  it("t_min <= t_max always holds", () => {
    const s = setDiffBand(initialState(), 42, 3, 100);
    const [lo, hi] = s.diffBand!;
    expect(lo).toBeLessThanOrEqual(hi);
  });

  it("clears", () => {
    const s = clearDiffBand(setDiffBand(initialState(), 1, 2, 100));
    expect(s.diffBand).toBeNull();
  });
});

describe("method", () => {
  it("switches", () => {
    expect(setMethod(initialState(), "tsne").method).toBe("tsne");
  });
});
