/**
 * Figure builders: each takes the parsed input tables (in --in order) and
 * returns a Scene. Schemas are validated before any drawing starts.
 */

import { COLORS, frame, legend, spanOf, ticks } from "./axes.js";
import { concurrenceColor, DIAGONAL_GRAY } from "./color.js";
import { column, requireColumns, Table, textColumn } from "./csv.js";
import { Scene } from "./scene.js";

export type FigureId = "fig2" | "fig3" | "fig4" | "fig5" | "scaling";

export const FIGURE_INPUTS: Record<FigureId, string[][]> = {
  fig2: [
    ["site", "moment"],
    ["site_i", "site_j", "concurrence"],
  ],
  fig3: [["lambda", "c_ab", "c_ac", "c_bc"]],
  fig4: [["geometry", "site_i", "site_j", "concurrence"]],
  fig5: [
    ["j", "correlation"],
    ["j", "rkky_exact_norm", "rkky_approx_norm"],
  ],
  scaling: [["N", "gap", "delta", "jstar"]],
};

function validated(id: FigureId, tables: Table[]): Table[] {
  const schemas = FIGURE_INPUTS[id];
  if (tables.length !== schemas.length) {
    throw new Error(`${id} takes ${schemas.length} input CSV(s), got ${tables.length}`);
  }
  return tables.map((t, k) => requireColumns(t, schemas[k], `${id} input ${k + 1}`));
}

function momentBars(scene: Scene, box: { x: number; y: number; w: number; h: number }, table: Table) {
  const sites = column(table, "site");
  const moments = column(table, "moment");
  const ySpan = spanOf([...moments, 0]);
  const f = frame(scene, box, { lo: 0.5, hi: sites.length + 0.5 }, ySpan, {
    title: "Local moment of the chain ground doublet",
    xLabel: "site",
    yLabel: "moment",
    xTicks: sites,
    grid: true,
  });
  scene.line(f.sx(0.5), f.sy(0), f.sx(sites.length + 0.5), f.sy(0), COLORS.zero, 1);
  const barWidth = (f.w / sites.length) * 0.6;
  sites.forEach((site, k) => {
    const value = moments[k];
    const x = f.sx(site) - barWidth / 2;
    const y = Math.min(f.sy(0), f.sy(value));
    const h = Math.abs(f.sy(value) - f.sy(0));
    scene.rect(x, y, barWidth, h, value >= 0 ? COLORS.positive : COLORS.negative);
  });
}

interface HeatmapData {
  sites: number[];
  value: (i: number, j: number) => number | undefined;
}

function pairData(table: Table, rowFilter?: (k: number) => boolean): HeatmapData {
  const si = column(table, "site_i");
  const sj = column(table, "site_j");
  const c = column(table, "concurrence");
  const map = new Map<string, number>();
  const sites = new Set<number>();
  for (let k = 0; k < si.length; k++) {
    if (rowFilter && !rowFilter(k)) continue;
    sites.add(si[k]);
    sites.add(sj[k]);
    map.set(`${si[k]},${sj[k]}`, c[k]);
    map.set(`${sj[k]},${si[k]}`, c[k]);
  }
  return {
    sites: [...sites].sort((a, b) => a - b),
    value: (i, j) => map.get(`${i},${j}`),
  };
}

function heatmap(
  scene: Scene,
  box: { x: number; y: number; w: number; h: number },
  data: HeatmapData,
  title: string,
  colorbar = true,
) {
  const n = data.sites.length;
  const margin = { left: 46, right: colorbar ? 56 : 16, top: 30, bottom: 40 };
  const side = Math.min(box.w - margin.left - margin.right, box.h - margin.top - margin.bottom);
  const x0 = box.x + margin.left;
  const y0 = box.y + margin.top;
  const cell = side / n;
  scene.text(box.x + box.w / 2, box.y + 16, title, 12, COLORS.text, "middle");
  for (let a = 0; a < n; a++) {
    for (let b = 0; b < n; b++) {
      const i = data.sites[a];
      const j = data.sites[b];
      const x = x0 + a * cell;
      const y = y0 + (n - 1 - b) * cell;
      if (i === j) {
        scene.rect(x, y, cell, cell, DIAGONAL_GRAY);
        continue;
      }
      const v = data.value(i, j);
      if (v === undefined) throw new Error(`missing pair (${i}, ${j}) in concurrence data`);
      scene.rect(x, y, cell, cell, concurrenceColor(v), "#e6e6e6");
    }
  }
  scene.rect(x0, y0, n * cell, n * cell, "none", COLORS.axis);
  const step = n > 12 ? 2 : 1;
  for (let a = 0; a < n; a += step) {
    scene.text(x0 + (a + 0.5) * cell, y0 + n * cell + 14, String(data.sites[a]), 9, COLORS.text, "middle");
    scene.text(x0 - 6, y0 + (n - 1 - a + 0.5) * cell + 3, String(data.sites[a]), 9, COLORS.text, "end");
  }
  scene.text(x0 + (n * cell) / 2, y0 + n * cell + 30, "site i", 11, COLORS.text, "middle");
  if (colorbar) {
    const bx = x0 + n * cell + 14;
    const bh = n * cell;
    const steps = 64;
    for (let k = 0; k < steps; k++) {
      const v = 1 - k / (steps - 1);
      scene.rect(bx, y0 + (k * bh) / steps, 12, bh / steps + 0.6, concurrenceColor(v));
    }
    scene.rect(bx, y0, 12, bh, "none", COLORS.axis);
    for (const v of [0, 0.5, 1]) {
      scene.text(bx + 17, y0 + (1 - v) * bh + 3, v.toString(), 9, COLORS.text, "start");
    }
  }
}

export function buildFig2(tables: Table[]): Scene {
  const [moments, pairs] = validated("fig2", tables);
  const scene = new Scene(640, 760);
  momentBars(scene, { x: 0, y: 8, w: 640, h: 300 }, moments);
  heatmap(
    scene,
    { x: 60, y: 320, w: 520, h: 430 },
    pairData(pairs),
    "Pairwise concurrence, chain plus attached qubits",
  );
  return scene;
}

export function buildFig3(tables: Table[]): Scene {
  const [table] = validated("fig3", tables);
  const lam = column(table, "lambda");
  const series = [
    { name: "c_ab", label: "A-B", color: COLORS.seriesA },
    { name: "c_ac", label: "A-C", color: COLORS.seriesB },
    { name: "c_bc", label: "C-B", color: COLORS.seriesC },
  ];
  const scene = new Scene(640, 420);
  const all = series.flatMap((s) => column(table, s.name));
  const f = frame(scene, { x: 0, y: 0, w: 640, h: 420 }, spanOf(lam, 0.02), spanOf([...all, 0, 1], 0.05), {
    title: "Qubit and central-spin concurrence vs coupling ratio",
    xLabel: "coupling ratio",
    yLabel: "concurrence",
  });
  for (const s of series) {
    const ys = column(table, s.name);
    scene.polyline(lam.map((x, k) => [f.sx(x), f.sy(ys[k])] as [number, number]), s.color, 1.8);
  }
  // peak marker on the A-B curve at ratio 1 (closest grid point)
  const cab = column(table, "c_ab");
  let peakIdx = 0;
  for (let k = 1; k < lam.length; k++) {
    if (Math.abs(lam[k] - 1) < Math.abs(lam[peakIdx] - 1)) peakIdx = k;
  }
  scene.circle(f.sx(lam[peakIdx]), f.sy(cab[peakIdx]), 4, "none", COLORS.seriesA);
  scene.text(f.sx(lam[peakIdx]) + 7, f.sy(cab[peakIdx]) - 7, "peak 1/3", 10, COLORS.seriesA, "start");
  legend(scene, f.x0 + 12, f.y0 + 14, series.map((s) => ({ label: s.label, color: s.color })));
  return scene;
}

export function buildFig4(tables: Table[]): Scene {
  const [table] = validated("fig4", tables);
  const geometry = textColumn(table, "geometry");
  const names = [...new Set(geometry)];
  if (names.length < 1 || names.length > 2) {
    throw new Error(`fig4 expects one or two geometries, got ${names.length}`);
  }
  const scene = new Scene(names.length * 470, 470);
  names.forEach((name, panel) => {
    const data = pairData(table, (k) => geometry[k] === name);
    heatmap(
      scene,
      { x: panel * 470, y: 10, w: 470, h: 450 },
      data,
      `Pairwise concurrence, ${name} geometry`,
    );
  });
  return scene;
}

export function buildFig5(tables: Table[]): Scene {
  const [corr, rkky] = validated("fig5", tables);
  const scene = new Scene(640, 720);

  const j1 = column(corr, "j");
  const c = column(corr, "correlation");
  const fTop = frame(scene, { x: 0, y: 4, w: 640, h: 340 }, spanOf(j1, 0.04), spanOf([...c, 0]), {
    title: "Ground-state transverse spin correlation from site 1",
    xLabel: "site j",
    yLabel: "correlation",
    xTicks: j1,
  });
  scene.line(fTop.sx(j1[0]) - 8, fTop.sy(0), fTop.sx(j1[j1.length - 1]) + 8, fTop.sy(0), COLORS.zero, 1);
  scene.polyline(j1.map((x, k) => [fTop.sx(x), fTop.sy(c[k])] as [number, number]), COLORS.seriesA, 1.8);
  j1.forEach((x, k) => scene.circle(fTop.sx(x), fTop.sy(c[k]), 3, COLORS.seriesA));

  const j2 = column(rkky, "j");
  const exact = column(rkky, "rkky_exact_norm");
  const approx = column(rkky, "rkky_approx_norm");
  const fBot = frame(
    scene,
    { x: 0, y: 360, w: 640, h: 340 },
    spanOf(j2, 0.04),
    spanOf([...exact, ...approx, 0]),
    {
      title: "Induced qubit coupling along the chain (normalized)",
      xLabel: "attachment site j",
      yLabel: "coupling / |coupling(1,1)|",
      xTicks: j2,
    },
  );
  scene.line(fBot.sx(j2[0]) - 8, fBot.sy(0), fBot.sx(j2[j2.length - 1]) + 8, fBot.sy(0), COLORS.zero, 1);
  scene.polyline(j2.map((x, k) => [fBot.sx(x), fBot.sy(exact[k])] as [number, number]), COLORS.seriesA, 1.8);
  j2.forEach((x, k) => scene.circle(fBot.sx(x), fBot.sy(exact[k]), 3, COLORS.seriesA));
  scene.polyline(
    j2.map((x, k) => [fBot.sx(x), fBot.sy(approx[k])] as [number, number]),
    COLORS.seriesB,
    1.8,
    [5, 4],
  );
  j2.forEach((x, k) =>
    scene.rect(fBot.sx(x) - 2.6, fBot.sy(approx[k]) - 2.6, 5.2, 5.2, COLORS.seriesB),
  );
  legend(scene, fBot.x0 + 12, fBot.y0 + 14, [
    { label: "exact sum", color: COLORS.seriesA },
    { label: "single-gap approx", color: COLORS.seriesB, dash: [5, 4] },
  ]);
  return scene;
}

export function buildScaling(tables: Table[]): Scene {
  const [table] = validated("scaling", tables);
  const n = column(table, "N");
  const gap = column(table, "gap");
  const delta = column(table, "delta");
  const jstar = column(table, "jstar").map(Math.abs);
  const scene = new Scene(640, 720);

  const envelope = n.map((v) => Math.PI ** 2 / (2 * v));
  const fTop = frame(
    scene,
    { x: 0, y: 4, w: 640, h: 340 },
    spanOf(n, 0.05),
    spanOf([...gap, ...envelope, 0]),
    { title: "Chain gap vs size", xLabel: "chain size N", yLabel: "gap", xTicks: n },
  );
  scene.polyline(n.map((x, k) => [fTop.sx(x), fTop.sy(gap[k])] as [number, number]), COLORS.seriesA, 1.8);
  n.forEach((x, k) => scene.circle(fTop.sx(x), fTop.sy(gap[k]), 3, COLORS.seriesA));
  scene.polyline(
    n.map((x, k) => [fTop.sx(x), fTop.sy(envelope[k])] as [number, number]),
    COLORS.seriesB,
    1.5,
    [5, 4],
  );
  legend(scene, fTop.x0 + fTop.w - 170, fTop.y0 + 14, [
    { label: "measured", color: COLORS.seriesA },
    { label: "pi*pi/2N envelope", color: COLORS.seriesB, dash: [5, 4] },
  ]);

  const fBot = frame(
    scene,
    { x: 0, y: 360, w: 640, h: 340 },
    spanOf(n, 0.05),
    spanOf([...delta, ...jstar, 0]),
    {
      title: "Splitting and induced coupling vs size",
      xLabel: "chain size N",
      yLabel: "energy",
      xTicks: n,
    },
  );
  scene.polyline(n.map((x, k) => [fBot.sx(x), fBot.sy(delta[k])] as [number, number]), COLORS.seriesA, 1.8);
  n.forEach((x, k) => scene.circle(fBot.sx(x), fBot.sy(delta[k]), 3, COLORS.seriesA));
  scene.polyline(
    n.map((x, k) => [fBot.sx(x), fBot.sy(jstar[k])] as [number, number]),
    COLORS.seriesB,
    1.8,
    [5, 4],
  );
  n.forEach((x, k) => scene.rect(fBot.sx(x) - 2.6, fBot.sy(jstar[k]) - 2.6, 5.2, 5.2, COLORS.seriesB));
  legend(scene, fBot.x0 + 12, fBot.y0 + 14, [
    { label: "splitting", color: COLORS.seriesA },
    { label: "|coupling| (perturbative)", color: COLORS.seriesB, dash: [5, 4] },
  ]);
  return scene;
}

export function buildFigure(id: FigureId, tables: Table[]): Scene {
  switch (id) {
    case "fig2":
      return buildFig2(tables);
    case "fig3":
      return buildFig3(tables);
    case "fig4":
      return buildFig4(tables);
    case "fig5":
      return buildFig5(tables);
    case "scaling":
      return buildScaling(tables);
  }
}
