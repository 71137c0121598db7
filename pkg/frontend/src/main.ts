// Wiring: fetch -> state -> render. All rendering is driven by the cached
// server data plus the ViewState, so any interaction replay on the same
// data reproduces the same bindings.

import { ApiClient, LatestFetch } from "./api.js";
import type { EmbeddingPoint, ItemDetail, Meta, SortedDiff } from "./api.js";
import { opacityFromBand, sharedMax } from "./bindings.js";
import { renderCompare, hideCompare } from "./compare.js";
import { renderDetail } from "./detail.js";
import { renderScatter } from "./scatter.js";
import {
  Method,
  ViewState,
  clickItem,
  initialState,
  setCycleThreshold,
  setDiffBand,
  clearDiffBand,
  setMethod,
} from "./state.js";

const api = new ApiClient("");
const embeddingFetch = new LatestFetch();
const detailFetch = new LatestFetch();

interface Cache {
  meta: Meta | null;
  points: EmbeddingPoint[];
  details: Map<string, ItemDetail>;
  diff: SortedDiff | null;
}

const cache: Cache = { meta: null, points: [], details: new Map(), diff: null };
let state: ViewState = initialState();

const el = {
  banner: document.getElementById("banner") as HTMLElement,
  methods: document.getElementById("methods") as HTMLElement,
  tau: document.getElementById("tau") as HTMLInputElement,
  tauValue: document.getElementById("tau-value") as HTMLElement,
  scatter: document.getElementById("scatter") as unknown as SVGSVGElement,
  primaryCard: document.getElementById("primary-card") as HTMLElement,
  comparisonCard: document.getElementById("comparison-card") as HTMLElement,
  comparePanel: document.getElementById("compare") as HTMLElement,
  compareChart: document.getElementById("diff-chart") as unknown as SVGSVGElement,
  summary: document.getElementById("summary") as HTMLElement,
};

function showError(message: string): void {
  el.banner.textContent = message;
  el.banner.classList.remove("hidden");
}

function clearError(): void {
  el.banner.classList.add("hidden");
}

function renderMethodSwitcher(): void {
  el.methods.textContent = "";
  for (const method of cache.meta?.methods ?? []) {
    const b = document.createElement("button");
    b.textContent = method;
    b.className = method === state.method ? "active" : "";
    b.addEventListener("click", () => {
      state = setMethod(state, method as Method);
      void loadEmbedding();
    });
    el.methods.appendChild(b);
  }
}

function render(): void {
  renderMethodSwitcher();
  renderScatter(el.scatter, cache.points, state.selection, (id) => {
    state = clickItem(state, id);
    void loadSelection();
  });
  el.tauValue.textContent = state.cycleThreshold.toFixed(2);

  const [primaryId, comparisonId] = state.selection;
  const primary = primaryId ? cache.details.get(primaryId) : undefined;
  const comparison = comparisonId ? cache.details.get(comparisonId) : undefined;

  const images = [primary, comparison]
    .filter((d): d is ItemDetail => d !== undefined)
    .map((d) => d.image.pixels);
  const anchor = sharedMax(images);

  const alphas =
    cache.diff && comparison
      ? opacityFromBand(cache.diff.sorted, state.diffBand, state.excludedAlpha)
      : null;

  if (primary) {
    renderDetail(el.primaryCard, primary, "primary", state.cycleThreshold, anchor, alphas);
  } else {
    el.primaryCard.classList.add("hidden");
  }
  if (comparison) {
    renderDetail(el.comparisonCard, comparison, "comparison",
                 state.cycleThreshold, anchor, alphas);
  } else {
    el.comparisonCard.classList.add("hidden");
  }

  if (cache.diff && primary && comparison) {
    renderCompare(el.comparePanel, el.compareChart, cache.diff, state.diffBand, {
      onBand: (lo, hi) => {
        state = setDiffBand(state, lo, hi, cache.diff!.sorted.length);
        render();
      },
      onClear: () => {
        state = clearDiffBand(state);
        render();
      },
    });
  } else {
    hideCompare(el.comparePanel);
  }
}

async function loadEmbedding(): Promise<void> {
  try {
    const points = await embeddingFetch.run(() => api.embedding(state.method));
    if (points === null) return; // a newer request superseded this one
    cache.points = points;
    clearError();
    render();
  } catch (e) {
    showError(`failed to load embedding: ${e}`);
  }
}

async function loadSelection(): Promise<void> {
  try {
    const [a, b] = state.selection;
    const loaded = await detailFetch.run(async () => {
      const details = await Promise.all(
        state.selection.filter((id) => !cache.details.has(id)).map((id) => api.item(id)),
      );
      const diff = a && b ? await api.diff(a, b) : null;
      return { details, diff };
    });
    if (loaded === null) return;
    for (const d of loaded.details) cache.details.set(d.id, d);
    cache.diff = loaded.diff;
    clearError();
    render();
  } catch (e) {
    showError(`failed to load item details: ${e}`);
  }
}

async function boot(): Promise<void> {
  try {
    cache.meta = await api.meta();
    const { n, resolution } = cache.meta;
    el.summary.textContent =
      `${n} items, ${resolution}x${resolution} persistence images, ` +
      `max persistence ${cache.meta.global_max_persistence.toPrecision(3)}`;
    if (!cache.meta.methods.includes(state.method) && cache.meta.methods.length) {
      state = setMethod(state, cache.meta.methods[0] as Method);
    }
    await loadEmbedding();
  } catch (e) {
    showError(`failed to load project: ${e}`);
    setTimeout(boot, 1500); // the server answers 503 until the project loads
  }
}

el.tau.addEventListener("input", () => {
  state = setCycleThreshold(state, Number(el.tau.value));
  render();
});

void boot();
