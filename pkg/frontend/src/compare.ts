// Comparison panel: the sorted pixel-wise diff as a line chart with a
// draggable green band selecting a contiguous rank range. The selected
// range drives the opacity of both heatmaps.

import type { SortedDiff } from "./api.js";
import { bandValues, extentOf, scaleLinear } from "./bindings.js";

const NS = "http://www.w3.org/2000/svg";

export interface BrushCallbacks {
  onBand: (lo: number, hi: number) => void;
  onClear: () => void;
}

export function renderCompare(
  panel: HTMLElement,
  svg: SVGSVGElement,
  diff: SortedDiff,
  band: [number, number] | null,
  callbacks: BrushCallbacks,
): void {
  panel.classList.remove("hidden");
  svg.textContent = "";
  const w = svg.clientWidth || 640;
  const h = svg.clientHeight || 180;
  const m = { left: 46, right: 10, top: 8, bottom: 20 };
  const n = diff.sorted.length;
  const sx = scaleLinear({ min: 0, max: n - 1 }, [m.left, w - m.right]);
  const sy = scaleLinear(
    extentOf([0, Math.max(diff.maxDiff, 1e-12)], 0.02),
    [h - m.bottom, m.top],
  );

  if (band !== null) {
    const rect = document.createElementNS(NS, "rect");
    rect.setAttribute("x", String(sx(band[0])));
    rect.setAttribute("y", String(m.top));
    rect.setAttribute("width", String(Math.max(1, sx(band[1]) - sx(band[0]))));
    rect.setAttribute("height", String(h - m.top - m.bottom));
    rect.setAttribute("fill", "rgba(102,194,113,0.35)");
    svg.appendChild(rect);
  }

  const path = document.createElementNS(NS, "path");
  path.setAttribute(
    "d",
    diff.sorted
      .map((e, i) => `${i === 0 ? "M" : "L"}${sx(i).toFixed(1)},${sy(e.diff).toFixed(1)}`)
      .join(""),
  );
  path.setAttribute("fill", "none");
  path.setAttribute("stroke", "#444");
  path.setAttribute("stroke-width", "1.5");
  svg.appendChild(path);

  const axis = document.createElementNS(NS, "text");
  axis.setAttribute("x", "4");
  axis.setAttribute("y", String(m.top + 10));
  axis.setAttribute("class", "axis-label");
  const label =
    band === null
      ? `max ${diff.maxDiff.toPrecision(3)}`
      : `band [${bandValues(diff.sorted, band).map((v) => v.toPrecision(3)).join(", ")}]`;
  axis.textContent = label;
  svg.appendChild(axis);

  // drag to brush a rank range; click without dragging clears it
  let dragStart: number | null = null;
  const rankAt = (clientX: number) => {
    const bounds = svg.getBoundingClientRect();
    const t = (clientX - bounds.left - m.left) / (w - m.left - m.right);
    return Math.max(0, Math.min(n - 1, Math.round(t * (n - 1))));
  };
  svg.onmousedown = (ev) => {
    dragStart = rankAt(ev.clientX);
  };
  svg.onmousemove = (ev) => {
    if (dragStart !== null && ev.buttons) {
      callbacks.onBand(dragStart, rankAt(ev.clientX));
    }
  };
  svg.onmouseup = (ev) => {
    if (dragStart !== null) {
      const end = rankAt(ev.clientX);
      if (end === dragStart) callbacks.onClear();
      else callbacks.onBand(dragStart, end);
    }
    dragStart = null;
  };
}

export function hideCompare(panel: HTMLElement): void {
  panel.classList.add("hidden");
}
