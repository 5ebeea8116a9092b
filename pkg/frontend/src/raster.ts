/**
 * Software rasterizer for the scene primitives. No anti-aliasing, integer
 * scanline fills and Bresenham strokes: crude but dependency-free, and the
 * data marks land in exactly the same places as in the SVG backend.
 */

import { GLYPH_ADVANCE, GLYPH_H, GLYPH_W, glyph, textWidth } from "./font.js";
import { Item, Scene, TextItem } from "./scene.js";

export interface Raster {
  width: number;
  height: number;
  /** RGB, 3 bytes per pixel, row-major */
  pixels: Uint8Array;
}

function parseColor(color: string): [number, number, number] {
  if (color === "none") return [0, 0, 0];
  const m = /^#([0-9a-fA-F]{6})$/.exec(color);
  if (!m) throw new Error(`unsupported color ${color} (use #rrggbb or 'none')`);
  const v = parseInt(m[1], 16);
  return [(v >> 16) & 0xff, (v >> 8) & 0xff, v & 0xff];
}

class Canvas {
  pixels: Uint8Array;

  constructor(
    readonly width: number,
    readonly height: number,
  ) {
    this.pixels = new Uint8Array(width * height * 3);
  }

  set(x: number, y: number, rgb: [number, number, number]) {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const k = (y * this.width + x) * 3;
    this.pixels[k] = rgb[0];
    this.pixels[k + 1] = rgb[1];
    this.pixels[k + 2] = rgb[2];
  }

  fillRect(x0: number, y0: number, w: number, h: number, rgb: [number, number, number]) {
    const x1 = Math.round(x0 + w);
    const y1 = Math.round(y0 + h);
    for (let y = Math.round(y0); y < y1; y++) {
      for (let x = Math.round(x0); x < x1; x++) this.set(x, y, rgb);
    }
  }

  stamp(x: number, y: number, size: number, rgb: [number, number, number]) {
    const r = Math.max(0, Math.floor(size / 2));
    for (let dy = -r; dy <= r; dy++) {
      for (let dx = -r; dx <= r; dx++) this.set(x + dx, y + dy, rgb);
    }
  }

  /** Bresenham segment with optional dashing (dash lengths in pixels). */
  line(
    x0: number,
    y0: number,
    x1: number,
    y1: number,
    rgb: [number, number, number],
    width: number,
    dash?: number[],
  ) {
    let x = Math.round(x0);
    let y = Math.round(y0);
    const xe = Math.round(x1);
    const ye = Math.round(y1);
    const dx = Math.abs(xe - x);
    const dy = -Math.abs(ye - y);
    const sx = x < xe ? 1 : -1;
    const sy = y < ye ? 1 : -1;
    let err = dx + dy;
    const period = dash ? dash.reduce((a, b) => a + b, 0) : 0;
    let travelled = 0;
    for (;;) {
      let draw = true;
      if (dash && period > 0) {
        let t = travelled % period;
        for (let i = 0; i < dash.length; i++) {
          if (t < dash[i]) {
            draw = i % 2 === 0;
            break;
          }
          t -= dash[i];
        }
      }
      if (draw) this.stamp(x, y, width, rgb);
      if (x === xe && y === ye) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x += sx;
        travelled += 1;
      }
      if (e2 <= dx) {
        err += dx;
        y += sy;
        travelled += 1;
      }
    }
  }

  fillCircle(cx: number, cy: number, r: number, rgb: [number, number, number]) {
    const x0 = Math.round(cx);
    const y0 = Math.round(cy);
    const ri = Math.max(1, Math.round(r));
    for (let dy = -ri; dy <= ri; dy++) {
      for (let dx = -ri; dx <= ri; dx++) {
        if (dx * dx + dy * dy <= ri * ri) this.set(x0 + dx, y0 + dy, rgb);
      }
    }
  }

  glyphs(it: TextItem, scale: number) {
    const rgb = parseColor(it.fill);
    const g = Math.max(1, Math.round((it.size * scale) / (GLYPH_H + 1)));
    const widthPx = textWidth(it.text) * g;
    let xs = Math.round(it.x * scale);
    if (it.anchor === "middle") xs -= Math.round(widthPx / 2);
    if (it.anchor === "end") xs -= widthPx;
    const ys = Math.round(it.y * scale) - GLYPH_H * g; // baseline at bottom row
    for (let c = 0; c < it.text.length; c++) {
      const cols = glyph(it.text[c]);
      for (let col = 0; col < GLYPH_W; col++) {
        for (let row = 0; row < GLYPH_H; row++) {
          if ((cols[col] >> row) & 1) {
            this.fillRect(xs + (c * GLYPH_ADVANCE + col) * g, ys + row * g, g, g, rgb);
          }
        }
      }
    }
  }
}

export function rasterize(scene: Scene, dpi = 96): Raster {
  const scale = dpi / 96;
  const canvas = new Canvas(Math.ceil(scene.width * scale), Math.ceil(scene.height * scale));
  canvas.fillRect(0, 0, canvas.width, canvas.height, parseColor(scene.background));
  const s = (v: number) => v * scale;
  for (const it of scene.items as Item[]) {
    switch (it.kind) {
      case "rect": {
        if (it.fill !== "none") {
          canvas.fillRect(s(it.x), s(it.y), s(it.w), s(it.h), parseColor(it.fill));
        }
        if (it.stroke) {
          const rgb = parseColor(it.stroke);
          canvas.line(s(it.x), s(it.y), s(it.x + it.w), s(it.y), rgb, 1);
          canvas.line(s(it.x + it.w), s(it.y), s(it.x + it.w), s(it.y + it.h), rgb, 1);
          canvas.line(s(it.x + it.w), s(it.y + it.h), s(it.x), s(it.y + it.h), rgb, 1);
          canvas.line(s(it.x), s(it.y + it.h), s(it.x), s(it.y), rgb, 1);
        }
        break;
      }
      case "line":
        canvas.line(
          s(it.x1), s(it.y1), s(it.x2), s(it.y2),
          parseColor(it.stroke),
          Math.max(1, Math.round((it.width ?? 1) * scale)),
          it.dash?.map((d) => d * scale),
        );
        break;
      case "polyline": {
        const rgb = parseColor(it.stroke);
        const w = Math.max(1, Math.round((it.width ?? 1.5) * scale));
        for (let i = 1; i < it.points.length; i++) {
          canvas.line(
            s(it.points[i - 1][0]), s(it.points[i - 1][1]),
            s(it.points[i][0]), s(it.points[i][1]),
            rgb, w, it.dash?.map((d) => d * scale),
          );
        }
        break;
      }
      case "circle": {
        // stroke as the outer disc, fill as a slightly smaller inner disc
        if (it.stroke) canvas.fillCircle(s(it.cx), s(it.cy), s(it.r), parseColor(it.stroke));
        if (it.fill !== "none") {
          const r = it.stroke ? Math.max(1, s(it.r) - Math.max(1, scale)) : s(it.r);
          canvas.fillCircle(s(it.cx), s(it.cy), r, parseColor(it.fill));
        }
        break;
      }
      case "text":
        canvas.glyphs(it, scale);
        break;
    }
  }
  return { width: canvas.width, height: canvas.height, pixels: canvas.pixels };
}
