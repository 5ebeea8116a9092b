/**
 * render --figure <id> --in <csv...> --out <path> [--format png|svg]
 *        [--dpi N] [--dump-verify]
 *
 * --dump-verify re-emits every input CSV next to the image as
 * <out>.verify-<basename>; the copies are byte-identical to the inputs, so
 * the rendering can be audited against its data.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { basename } from "node:path";

import { emitCsv, parseCsv, Table } from "./csv.js";
import { buildFigure, FIGURE_INPUTS, FigureId } from "./figures.js";
import { encodePng } from "./png.js";
import { rasterize } from "./raster.js";
import { toSvg } from "./svg.js";

interface Args {
  figure: FigureId;
  inputs: string[];
  out: string;
  format: "png" | "svg";
  dpi: number;
  dumpVerify: boolean;
}

export function parseArgs(argv: string[]): Args {
  if (argv[0] !== "render") {
    throw new Error("usage: render --figure <id> --in <csv...> --out <path> [--format png|svg] [--dpi N] [--dump-verify]");
  }
  let figure: string | undefined;
  const inputs: string[] = [];
  let out: string | undefined;
  let format: string | undefined;
  let dpi = 96;
  let dumpVerify = false;
  for (let k = 1; k < argv.length; k++) {
    const arg = argv[k];
    switch (arg) {
      case "--figure":
        figure = argv[++k];
        break;
      case "--in":
        while (k + 1 < argv.length && !argv[k + 1].startsWith("--")) inputs.push(argv[++k]);
        break;
      case "--out":
        out = argv[++k];
        break;
      case "--format":
        format = argv[++k];
        break;
      case "--dpi":
        dpi = Number(argv[++k]);
        break;
      case "--dump-verify":
        dumpVerify = true;
        break;
      default:
        throw new Error(`unknown argument ${arg}`);
    }
  }
  if (!figure || !(figure in FIGURE_INPUTS)) {
    throw new Error(`--figure must be one of ${Object.keys(FIGURE_INPUTS).join(", ")}, got ${figure}`);
  }
  if (inputs.length === 0) throw new Error("--in needs at least one CSV path");
  if (!out) throw new Error("--out is required");
  if (!format) format = out.endsWith(".png") ? "png" : "svg";
  if (format !== "png" && format !== "svg") throw new Error(`--format must be png or svg, got ${format}`);
  if (!Number.isFinite(dpi) || dpi < 24 || dpi > 600) throw new Error(`--dpi out of range: ${dpi}`);
  return { figure: figure as FigureId, inputs, out, format, dpi, dumpVerify };
}

export function render(args: Args): void {
  const tables: Table[] = args.inputs.map((path) => {
    let text: string;
    try {
      text = readFileSync(path, "utf8");
    } catch (err) {
      throw new Error(`cannot read ${path}: ${(err as Error).message}`);
    }
    return parseCsv(text);
  });
  const scene = buildFigure(args.figure, tables);
  if (args.format === "svg") {
    writeFileSync(args.out, toSvg(scene));
  } else {
    writeFileSync(args.out, encodePng(rasterize(scene, args.dpi)));
  }
  if (args.dumpVerify) {
    tables.forEach((table, k) => {
      writeFileSync(`${args.out}.verify-${basename(args.inputs[k])}`, emitCsv(table));
    });
  }
}

export function main(argv: string[]): number {
  try {
    const args = parseArgs(argv);
    render(args);
    console.log(`wrote ${args.out}`);
    return 0;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

const entry = process.argv[1] ?? "";
if (entry.endsWith("cli.js") || entry.endsWith("cli.ts")) {
  process.exit(main(process.argv.slice(2)));
}
