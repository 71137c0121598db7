// Per-item detail card: digit raster with cycle polylines, persistence
// image heatmap, and the dim-1 pair list. The heatmap's red end is anchored
// at the max pixel across the currently selected images so juxtaposed
// cards share one scale.

import type { ItemDetail } from "./api.js";
import { visibleCycles } from "./bindings.js";
import { cssColor, divergingBlueRed } from "./colormap.js";

const RASTER_SCALE = 8;
const HEATMAP_SCALE = 14;
const CYCLE_COLOR = "#ffd92f";

function drawRaster(canvas: HTMLCanvasElement, detail: ItemDetail): void {
  const { width, height, pixels } = detail.raster;
  canvas.width = width * RASTER_SCALE;
  canvas.height = height * RASTER_SCALE;
  const ctx = canvas.getContext("2d")!;
  for (let r = 0; r < height; r++) {
    for (let c = 0; c < width; c++) {
      const v = pixels[r * width + c];
      ctx.fillStyle = `rgb(${v},${v},${v})`;
      ctx.fillRect(c * RASTER_SCALE, r * RASTER_SCALE, RASTER_SCALE, RASTER_SCALE);
    }
  }
}

function drawCycles(canvas: HTMLCanvasElement, detail: ItemDetail, tau: number): void {
  const ctx = canvas.getContext("2d")!;
  ctx.strokeStyle = CYCLE_COLOR;
  ctx.lineWidth = 2;
  for (const cycle of visibleCycles(detail.cycles, tau)) {
    for (const { a, b } of cycle.edges) {
      ctx.beginPath();
      ctx.moveTo((a[1] + 0.5) * RASTER_SCALE, (a[0] + 0.5) * RASTER_SCALE);
      ctx.lineTo((b[1] + 0.5) * RASTER_SCALE, (b[0] + 0.5) * RASTER_SCALE);
      ctx.stroke();
    }
  }
}

function drawHeatmap(
  canvas: HTMLCanvasElement,
  detail: ItemDetail,
  anchor: number,
  alphas: Float64Array | null,
): void {
  const n = detail.image.resolution;
  canvas.width = n * HEATMAP_SCALE;
  canvas.height = n * HEATMAP_SCALE;
  const ctx = canvas.getContext("2d")!;
  for (let iy = 0; iy < n; iy++) {
    for (let ix = 0; ix < n; ix++) {
      const k = iy * n + ix;
      const rgb = divergingBlueRed(detail.image.pixels[k], anchor);
      ctx.fillStyle = cssColor(rgb, alphas ? alphas[k] : 1);
      // persistence axis grows upward: row 0 sits at the bottom
      ctx.fillRect(ix * HEATMAP_SCALE, (n - 1 - iy) * HEATMAP_SCALE,
                   HEATMAP_SCALE, HEATMAP_SCALE);
    }
  }
}

export function renderDetail(
  card: HTMLElement,
  detail: ItemDetail,
  role: "primary" | "comparison",
  tau: number,
  anchor: number,
  alphas: Float64Array | null,
): void {
  card.textContent = "";
  card.classList.remove("hidden");

  const title = document.createElement("h3");
  title.textContent = `${detail.id} — label ${detail.label} (${role})`;
  title.className = role;
  card.appendChild(title);

  const row = document.createElement("div");
  row.className = "detail-row";

  const rasterCanvas = document.createElement("canvas");
  rasterCanvas.title = "input raster with representative 1-cycles";
  drawRaster(rasterCanvas, detail);
  drawCycles(rasterCanvas, detail, tau);
  row.appendChild(rasterCanvas);

  const heatCanvas = document.createElement("canvas");
  heatCanvas.title = "persistence image (birth x persistence)";
  drawHeatmap(heatCanvas, detail, anchor, alphas);
  row.appendChild(heatCanvas);

  card.appendChild(row);

  const shown = visibleCycles(detail.cycles, tau).length;
  const info = document.createElement("p");
  info.textContent =
    `${detail.pairs.length} one-cycle pair(s); showing ${shown} of ` +
    `${detail.cycles.length} cycle(s) at τ = ${tau.toFixed(2)}`;
  card.appendChild(info);
}
