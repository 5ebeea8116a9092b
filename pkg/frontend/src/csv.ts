/**
 * Strict CSV handling for the simulation datasets.
 *
 * The files are plain comma-separated tables with a header row, no quoting
 * and no embedded separators, written by the simulation CLI with `\n`
 * endings. Parsing keeps the raw cell strings so a table can be re-emitted
 * byte-for-byte (`--dump-verify` relies on this).
 */

export interface Table {
  header: string[];
  /** raw cell strings, one array per data row */
  cells: string[][];
  /** numeric view of `cells`; NaN for non-numeric columns */
  values: number[][];
  /** line terminator seen in the file */
  eol: string;
  /** whether the file ended with a terminator */
  trailingEol: boolean;
}

export function parseCsv(text: string): Table {
  if (text.length === 0) throw new Error("empty CSV file");
  const eol = text.includes("\r\n") ? "\r\n" : "\n";
  const trailingEol = text.endsWith(eol);
  const body = trailingEol ? text.slice(0, text.length - eol.length) : text;
  const lines = body.split(eol);
  if (lines.length < 1 || lines[0].trim() === "") throw new Error("CSV has no header row");
  const header = lines[0].split(",");
  const cells: string[][] = [];
  for (let i = 1; i < lines.length; i++) {
    if (lines[i] === "") throw new Error(`blank line ${i + 1} in CSV`);
    const row = lines[i].split(",");
    if (row.length !== header.length) {
      throw new Error(
        `row ${i + 1} has ${row.length} cells, header has ${header.length}`,
      );
    }
    cells.push(row);
  }
  const values = cells.map((row) => row.map((cell) => Number(cell)));
  return { header, cells, values, eol, trailingEol };
}

/** Re-emit the table exactly as parsed. */
export function emitCsv(table: Table): string {
  const lines = [table.header.join(","), ...table.cells.map((row) => row.join(","))];
  return lines.join(table.eol) + (table.trailingEol ? table.eol : "");
}

/** Assert the header matches the schema for a figure input; returns the table. */
export function requireColumns(table: Table, columns: string[], label: string): Table {
  const got = table.header.join(",");
  const want = columns.join(",");
  if (got !== want) {
    const missing = columns.filter((c) => !table.header.includes(c));
    const extra = table.header.filter((c) => !columns.includes(c));
    const parts = [`${label}: expected columns [${want}], got [${got}]`];
    if (missing.length) parts.push(`missing: ${missing.join(", ")}`);
    if (extra.length) parts.push(`unexpected: ${extra.join(", ")}`);
    throw new Error(parts.join("; "));
  }
  if (table.cells.length === 0) throw new Error(`${label}: no data rows`);
  return table;
}

/** Numeric column by name (validated header assumed). */
export function column(table: Table, name: string): number[] {
  const k = table.header.indexOf(name);
  if (k < 0) throw new Error(`no column ${name}`);
  const out = table.values.map((row) => row[k]);
  for (let i = 0; i < out.length; i++) {
    if (!Number.isFinite(out[i])) {
      throw new Error(`non-numeric value ${table.cells[i][k]!} in column ${name}, row ${i + 2}`);
    }
  }
  return out;
}

/** String column by name. */
export function textColumn(table: Table, name: string): string[] {
  const k = table.header.indexOf(name);
  if (k < 0) throw new Error(`no column ${name}`);
  return table.cells.map((row) => row[k]);
}
