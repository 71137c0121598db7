// Diverging blue -> white -> red map over [0, anchor]: low density blue,
// high density red, midpoint white.

const BLUE: [number, number, number] = [33, 102, 172];
const WHITE: [number, number, number] = [247, 247, 247];
const RED: [number, number, number] = [178, 24, 43];

function mix(
  a: [number, number, number],
  b: [number, number, number],
  t: number,
): [number, number, number] {
  return [
    Math.round(a[0] + (b[0] - a[0]) * t),
    Math.round(a[1] + (b[1] - a[1]) * t),
    Math.round(a[2] + (b[2] - a[2]) * t),
  ];
}

export function divergingBlueRed(value: number, anchor: number): [number, number, number] {
  if (anchor <= 0) return WHITE;
  const t = Math.min(1, Math.max(0, value / anchor));
  return t < 0.5 ? mix(BLUE, WHITE, t * 2) : mix(WHITE, RED, (t - 0.5) * 2);
}

export function cssColor(rgb: [number, number, number], alpha = 1): string {
  return `rgba(${rgb[0]},${rgb[1]},${rgb[2]},${alpha})`;
}

// categorical label palette (ten classes)
const LABEL_COLORS = [
  "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

export function labelColor(label: number): string {
  return LABEL_COLORS[((label % 10) + 10) % 10];
}
