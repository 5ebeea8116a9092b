/**
 * Linear scales, tick placement and the shared chart frame (axes, grid,
 * labels) every panel is drawn into.
 */

import { Scene } from "./scene.js";

export const COLORS = {
  axis: "#333333",
  grid: "#dddddd",
  text: "#222222",
  zero: "#999999",
  seriesA: "#1f6fb2",
  seriesB: "#d95f02",
  seriesC: "#2c9e4b",
  positive: "#1f6fb2",
  negative: "#d95f02",
};

export interface Span {
  lo: number;
  hi: number;
}

export function spanOf(values: number[], padFraction = 0.08): Span {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (lo === hi) {
    lo -= 1;
    hi += 1;
  }
  const pad = (hi - lo) * padFraction;
  return { lo: lo - pad, hi: hi + pad };
}

/** 1-2-5 tick placement covering the span with roughly `target` ticks. */
export function ticks(span: Span, target = 5): number[] {
  const raw = (span.hi - span.lo) / Math.max(2, target);
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const norm = raw / mag;
  const step = (norm >= 5 ? 10 : norm >= 2 ? 5 : norm >= 1 ? 2 : 1) * mag;
  const first = Math.ceil(span.lo / step) * step;
  const out: number[] = [];
  for (let v = first; v <= span.hi + 1e-12 * step; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

export function tickLabel(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(1).replace("e+", "e");
  return Number(v.toPrecision(4)).toString();
}

export interface Frame {
  x0: number;
  y0: number; // top-left of the plot area
  w: number;
  h: number;
  sx: (v: number) => number;
  sy: (v: number) => number;
}

export interface FrameOptions {
  title?: string;
  xLabel?: string;
  yLabel?: string;
  xTicks?: number[];
  yTicks?: number[];
  grid?: boolean;
}

/** Draw an axes frame inside the given box and return the data->pixel scales. */
export function frame(
  scene: Scene,
  box: { x: number; y: number; w: number; h: number },
  xSpan: Span,
  ySpan: Span,
  opts: FrameOptions = {},
): Frame {
  const margin = { left: 62, right: 14, top: opts.title ? 28 : 14, bottom: 40 };
  const x0 = box.x + margin.left;
  const y0 = box.y + margin.top;
  const w = box.w - margin.left - margin.right;
  const h = box.h - margin.top - margin.bottom;
  const sx = (v: number) => x0 + ((v - xSpan.lo) / (xSpan.hi - xSpan.lo)) * w;
  const sy = (v: number) => y0 + h - ((v - ySpan.lo) / (ySpan.hi - ySpan.lo)) * h;

  if (opts.title) {
    scene.text(box.x + box.w / 2, box.y + 16, opts.title, 12, COLORS.text, "middle");
  }
  const xt = opts.xTicks ?? ticks(xSpan);
  const yt = opts.yTicks ?? ticks(ySpan);
  for (const v of yt) {
    if (opts.grid !== false) scene.line(x0, sy(v), x0 + w, sy(v), COLORS.grid, 1);
    scene.line(x0 - 4, sy(v), x0, sy(v), COLORS.axis, 1);
    scene.text(x0 - 7, sy(v) + 3.5, tickLabel(v), 10, COLORS.text, "end");
  }
  for (const v of xt) {
    scene.line(sx(v), y0 + h, sx(v), y0 + h + 4, COLORS.axis, 1);
    scene.text(sx(v), y0 + h + 16, tickLabel(v), 10, COLORS.text, "middle");
  }
  scene.rect(x0, y0, w, h, "none", COLORS.axis);
  if (opts.xLabel) scene.text(x0 + w / 2, y0 + h + 32, opts.xLabel, 11, COLORS.text, "middle");
  if (opts.yLabel) scene.text(box.x + 14, y0 - 4, opts.yLabel, 11, COLORS.text, "start");
  return { x0, y0, w, h, sx, sy };
}

export function legend(
  scene: Scene,
  x: number,
  y: number,
  entries: Array<{ label: string; color: string; dash?: number[] }>,
) {
  entries.forEach((entry, k) => {
    const yy = y + k * 16;
    scene.line(x, yy, x + 22, yy, entry.color, 2, entry.dash);
    scene.text(x + 28, yy + 3.5, entry.label, 10, COLORS.text, "start");
  });
}
