/**
 * Fixed [0, 1] colormap for concurrence heatmaps: white through warm reds.
 * The scale never autoranges, so cells are comparable across figures; the
 * missing diagonal is drawn in a gray that the map itself never produces.
 */

const STOPS: Array<[number, [number, number, number]]> = [
  [0.0, [255, 255, 255]],
  [0.25, [254, 217, 166]],
  [0.5, [253, 141, 60]],
  [0.75, [217, 48, 31]],
  [1.0, [127, 0, 0]],
];

export const DIAGONAL_GRAY = "#b0b0b0";

function hex(rgb: [number, number, number]): string {
  return "#" + rgb.map((v) => Math.round(v).toString(16).padStart(2, "0")).join("");
}

export function concurrenceColor(value: number): string {
  if (!Number.isFinite(value)) throw new Error("non-finite concurrence value");
  const v = Math.min(1, Math.max(0, value));
  for (let k = 1; k < STOPS.length; k++) {
    const [t1, c1] = STOPS[k];
    const [t0, c0] = STOPS[k - 1];
    if (v <= t1) {
      const t = (v - t0) / (t1 - t0);
      return hex([
        c0[0] + t * (c1[0] - c0[0]),
        c0[1] + t * (c1[1] - c0[1]),
        c0[2] + t * (c1[2] - c0[2]),
      ]);
    }
  }
  return hex(STOPS[STOPS.length - 1][1]);
}
