/**
 * Minimal retained scene: every figure is built from these primitives and
 * then serialized to SVG or rasterized to PNG, so the two backends cannot
 * drift apart.
 */

export type Anchor = "start" | "middle" | "end";

export interface RectItem {
  kind: "rect";
  x: number;
  y: number;
  w: number;
  h: number;
  fill: string;
  stroke?: string;
}

export interface LineItem {
  kind: "line";
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  stroke: string;
  width?: number;
  dash?: number[];
}

export interface PolylineItem {
  kind: "polyline";
  points: Array<[number, number]>;
  stroke: string;
  width?: number;
  dash?: number[];
}

export interface CircleItem {
  kind: "circle";
  cx: number;
  cy: number;
  r: number;
  fill: string;
  stroke?: string;
}

export interface TextItem {
  kind: "text";
  x: number;
  y: number; // baseline
  text: string;
  size: number;
  fill: string;
  anchor: Anchor;
}

export type Item = RectItem | LineItem | PolylineItem | CircleItem | TextItem;

export class Scene {
  readonly items: Item[] = [];

  constructor(
    readonly width: number,
    readonly height: number,
    readonly background = "#ffffff",
  ) {}

  rect(x: number, y: number, w: number, h: number, fill: string, stroke?: string) {
    this.items.push({ kind: "rect", x, y, w, h, fill, stroke });
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke: string, width = 1, dash?: number[]) {
    this.items.push({ kind: "line", x1, y1, x2, y2, stroke, width, dash });
  }

  polyline(points: Array<[number, number]>, stroke: string, width = 1.5, dash?: number[]) {
    this.items.push({ kind: "polyline", points, stroke, width, dash });
  }

  circle(cx: number, cy: number, r: number, fill: string, stroke?: string) {
    this.items.push({ kind: "circle", cx, cy, r, fill, stroke });
  }

  text(x: number, y: number, text: string, size: number, fill: string, anchor: Anchor = "start") {
    this.items.push({ kind: "text", x, y, text, size, fill, anchor });
  }
}
