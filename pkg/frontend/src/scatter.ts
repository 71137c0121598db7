// Embedding scatter: one mark per item, colored by label; the primary
// selection carries a blue ring, the comparison a red ring.

import type { EmbeddingPoint } from "./api.js";
import { extentOf, scaleLinear } from "./bindings.js";
import { labelColor } from "./colormap.js";

const NS = "http://www.w3.org/2000/svg";
const PRIMARY_RING = "#2166ac";
const COMPARISON_RING = "#b2182b";

export function renderScatter(
  svg: SVGSVGElement,
  points: EmbeddingPoint[],
  selection: string[],
  onClick: (id: string) => void,
): void {
  svg.textContent = "";
  const w = svg.clientWidth || 640;
  const h = svg.clientHeight || 520;
  const sx = scaleLinear(extentOf(points.map((p) => p.x)), [30, w - 10]);
  const sy = scaleLinear(extentOf(points.map((p) => p.y)), [h - 20, 10]);

  for (const p of points) {
    const c = document.createElementNS(NS, "circle");
    c.setAttribute("cx", String(sx(p.x)));
    c.setAttribute("cy", String(sy(p.y)));
    c.setAttribute("r", "3.5");
    c.setAttribute("fill", labelColor(p.label));
    c.setAttribute("data-id", p.id);
    const rank = selection.indexOf(p.id);
    if (rank >= 0) {
      c.setAttribute("stroke", rank === 0 ? PRIMARY_RING : COMPARISON_RING);
      c.setAttribute("stroke-width", "2.5");
      c.setAttribute("r", "5");
    }
    c.addEventListener("click", () => onClick(p.id));
    const title = document.createElementNS(NS, "title");
    title.textContent = `${p.id} (label ${p.label})`;
    c.appendChild(title);
    svg.appendChild(c);
  }
}
