// Typed client for the explorer JSON API. The server is the single source
// of truth for all numbers; the client never recomputes diffs or distances.

export interface Meta {
  n: number;
  labels: Record<string, number>;
  methods: string[];
  global_max_persistence: number;
  resolution: number;
}

export interface EmbeddingPoint {
  id: string;
  x: number;
  y: number;
  label: number;
}

export interface CycleEdge {
  a: [number, number]; // (row, col)
  b: [number, number];
}

export interface Cycle {
  pairIndex: number;
  persistence: number;
  edges: CycleEdge[];
}

export interface ItemDetail {
  id: string;
  label: number;
  raster: { width: number; height: number; pixels: Uint8Array };
  pairs: { birth: number; death: number; persistence: number }[];
  cycles: Cycle[];
  image: { resolution: number; pixels: number[] };
}

export interface DiffEntry {
  index: number;
  diff: number;
}

export interface SortedDiff {
  sorted: DiffEntry[];
  maxDiff: number;
}

function decodeBase64(b64: string): Uint8Array {
  const bin = atob(b64);
  const out = new Uint8Array(bin.length);
  for (let i = 0; i < bin.length; i++) out[i] = bin.charCodeAt(i);
  return out;
}

async function getJson(base: string, path: string): Promise<unknown> {
  const r = await fetch(base + path);
  if (!r.ok) throw new Error(`${path}: HTTP ${r.status}`);
  return r.json();
}

export class ApiClient {
  constructor(private base: string = "") {}

  async meta(): Promise<Meta> {
    return (await getJson(this.base, "/api/meta")) as Meta;
  }

  async embedding(method: string): Promise<EmbeddingPoint[]> {
    return (await getJson(
      this.base,
      `/api/embedding?method=${encodeURIComponent(method)}`,
    )) as EmbeddingPoint[];
  }

  async item(id: string): Promise<ItemDetail> {
    const raw = (await getJson(
      this.base,
      `/api/item/${encodeURIComponent(id)}`,
    )) as {
      id: string;
      label: number;
      raster: { width: number; height: number; pixels_b64: string };
      pairs: { birth: number; death: number; persistence: number }[];
      cycles: {
        pair_index: number;
        persistence: number;
        edges: [[number, number], [number, number]][];
      }[];
      image: { resolution: number; pixels: number[] };
    };
    return {
      id: raw.id,
      label: raw.label,
      raster: {
        width: raw.raster.width,
        height: raw.raster.height,
        pixels: decodeBase64(raw.raster.pixels_b64),
      },
      pairs: raw.pairs,
      cycles: raw.cycles.map((c) => ({
        pairIndex: c.pair_index,
        persistence: c.persistence,
        edges: c.edges.map(([a, b]) => ({ a, b })),
      })),
      image: raw.image,
    };
  }

  async diff(a: string, b: string): Promise<SortedDiff> {
    const raw = (await getJson(
      this.base,
      `/api/diff?a=${encodeURIComponent(a)}&b=${encodeURIComponent(b)}`,
    )) as { sorted: [number, number][]; max_diff: number };
    return {
      sorted: raw.sorted.map(([index, diff]) => ({ index, diff })),
      maxDiff: raw.max_diff,
    };
  }
}

// Last-request-wins guard: stale responses are discarded per panel.
export class LatestFetch {
  private token = 0;

  async run<T>(work: () => Promise<T>): Promise<T | null> {
    const mine = ++this.token;
    const result = await work();
    return mine === this.token ? result : null;
  }
}
