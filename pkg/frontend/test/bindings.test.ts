import { describe, expect, it } from "vitest";

import type { Cycle, DiffEntry } from "../src/api.js";
import {
  bandValues,
  extentOf,
  isNonDecreasing,
  opacityFromBand,
  scaleLinear,
  sharedMax,
  visibleCycles,
} from "../src/bindings.js";
import { divergingBlueRed, labelColor } from "../src/colormap.js";

function mkCycle(persistence: number): Cycle {
  return { pairIndex: 0, persistence, edges: [{ a: [0, 0], b: [0, 1] }] };
}

function mkSorted(diffs: number[]): DiffEntry[] {
  return diffs
    .map((diff, index) => ({ index, diff }))
    .sort((a, b) => a.diff - b.diff || a.index - b.index);
}

describe("visibleCycles", () => {
  const cycles = [mkCycle(0.1), mkCycle(0.5), mkCycle(0.9)];

  it("tau = 0 keeps everything", () => {
    expect(visibleCycles(cycles, 0)).toEqual(cycles);
  });

  it("threshold is inclusive (persistence >= tau)", () => {
    expect(visibleCycles(cycles, 0.5).map((c) => c.persistence)).toEqual([0.5, 0.9]);
  });

  it("tau = 1 keeps only persistence-1 cycles", () => {
    expect(visibleCycles([...cycles, mkCycle(1.0)], 1)).toHaveLength(1);
  });
});

describe("opacityFromBand", () => {
  it("null band leaves every pixel opaque", () => {
    const alphas = opacityFromBand(mkSorted([0, 0.2, 0.1]), null, 0.15);
    expect([...alphas]).toEqual([1, 1, 1]);
  });

  it("top-decile band leaves exactly the banded ranks opaque", () => {
    const diffs = Array.from({ length: 100 }, (_, i) => i / 100);
    const alphas = opacityFromBand(mkSorted(diffs), [90, 99], 0.15);
    const opaque = [...alphas].filter((a) => a === 1).length;
    expect(opaque).toBe(10);
  });

  it("ties are resolved by the server's rank order, not by value", () => {
    // all-zero diffs: a rank band still selects exactly its own width
    const alphas = opacityFromBand(mkSorted(new Array(100).fill(0)), [90, 99], 0.15);
    expect([...alphas].filter((a) => a === 1).length).toBe(10);
    expect([...alphas].filter((a) => a === 0.15).length).toBe(90);
  });
});

describe("bandValues", () => {
  it("reports the diff values at the band ends", () => {
    const sorted = mkSorted([0.4, 0.1, 0.3, 0.2]);
    expect(bandValues(sorted, [1, 3])).toEqual([0.2, 0.4]);
  });
});

describe("isNonDecreasing", () => {
  it("accepts sorted, rejects unsorted", () => {
    expect(isNonDecreasing(mkSorted([3, 1, 2]))).toBe(true);
    expect(isNonDecreasing([{ index: 0, diff: 2 }, { index: 1, diff: 1 }])).toBe(false);
  });
});

describe("sharedMax", () => {
  it("anchors at the max across both images", () => {
    expect(sharedMax([[0.2, 0.1], [0.6, 0.3]])).toBe(0.6);
    expect(sharedMax([[0.2]])).toBe(0.2);
    expect(sharedMax([])).toBe(0);
  });
});

describe("scales", () => {
  it("maps domain ends to range ends", () => {
    const s = scaleLinear({ min: 0, max: 10 }, [100, 200]);
    expect(s(0)).toBe(100);
    expect(s(10)).toBe(200);
  });

  it("extent pads and survives empty input", () => {
    const e = extentOf([1, 3], 0.5);
    expect(e.min).toBe(0);
    expect(e.max).toBe(4);
    expect(extentOf([])).toEqual({ min: 0, max: 1 });
  });
});

describe("colormap", () => {
  it("low is blue, mid is white, high is red", () => {
    const [rl, , bl] = divergingBlueRed(0, 1);
    const [rm, gm, bm] = divergingBlueRed(0.5, 1);
    const [rh, , bh] = divergingBlueRed(1, 1);
    expect(bl).toBeGreaterThan(rl);
    expect([rm, gm, bm]).toEqual([247, 247, 247]);
    expect(rh).toBeGreaterThan(bh);
  });

  it("degenerate anchor falls back to white", () => {
    expect(divergingBlueRed(0.3, 0)).toEqual([247, 247, 247]);
  });

  it("labels cycle through ten colors", () => {
    expect(labelColor(0)).not.toBe(labelColor(1));
    expect(labelColor(12)).toBe(labelColor(2));
  });
});
