/** Fixed cluster colour ramp: C1 green through yellow/orange to red at the top.
 * k = 4 uses the four anchors directly; other k interpolate along the ramp. */

export const CLUSTER_RAMP = ["#1a9641", "#ffd92b", "#fd8d3c", "#d7191c"] as const;

export const HIGHLIGHT = "#2563eb";
export const NEUTRAL = "#d4d4d4";

const REMOTENESS_ORDER = [
  "Major City",
  "Inner Regional",
  "Outer Regional",
  "Remote",
  "Very Remote",
] as const;

const REMOTENESS_COLORS: Record<string, string> = {
  "Major City": "#4c78a8",
  "Inner Regional": "#72b7b2",
  "Outer Regional": "#eeca3b",
  Remote: "#f58518",
  "Very Remote": "#e45756",
};

function hexToRgb(hex: string): [number, number, number] {
  return [
    parseInt(hex.slice(1, 3), 16),
    parseInt(hex.slice(3, 5), 16),
    parseInt(hex.slice(5, 7), 16),
  ];
}

function rgbToHex(rgb: [number, number, number]): string {
  return "#" + rgb.map((c) => Math.round(c).toString(16).padStart(2, "0")).join("");
}

/** Piecewise-linear colour along the ramp; exact anchor hex at the stops. */
export function interpolateRamp(t: number): string {
  const clamped = Math.min(1, Math.max(0, t));
  const position = clamped * (CLUSTER_RAMP.length - 1);
  const index = Math.floor(position);
  const frac = position - index;
  if (frac === 0) return CLUSTER_RAMP[index];
  const lo = hexToRgb(CLUSTER_RAMP[index]);
  const hi = hexToRgb(CLUSTER_RAMP[index + 1]);
  return rgbToHex([
    lo[0] + (hi[0] - lo[0]) * frac,
    lo[1] + (hi[1] - lo[1]) * frac,
    lo[2] + (hi[2] - lo[2]) * frac,
  ]);
}

/** Colour for label "Ci" of a k-cluster run; C1 is always green, Ck always red. */
export function colorForLabel(label: string, k: number): string {
  const index = parseInt(label.slice(1), 10) - 1;
  if (k <= 1) return CLUSTER_RAMP[0];
  return interpolateRamp(index / (k - 1));
}

export function remotenessColor(category: string): string {
  return REMOTENESS_COLORS[category] ?? NEUTRAL;
}

export function remotenessOrder(): readonly string[] {
  return REMOTENESS_ORDER;
}

/** Blue ramp for IRSD deciles: darkest at decile 1 (most disadvantaged). */
export function irsdColor(decile: number): string {
  const t = (10 - decile) / 9;
  const light: [number, number, number] = [222, 235, 247];
  const dark: [number, number, number] = [28, 66, 125];
  return rgbToHex([
    light[0] + (dark[0] - light[0]) * t,
    light[1] + (dark[1] - light[1]) * t,
    light[2] + (dark[2] - light[2]) * t,
  ]);
}
