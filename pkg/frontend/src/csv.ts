import Papa from "papaparse";

export class CsvError extends Error {}

export interface SweepTable {
  /** Header names in file order; the first column is the x axis. */
  columns: string[];
  /** Row-major numeric data aligned with `columns`. */
  rows: number[][];
}

/**
 * Parse a sweep CSV: one header row, then >= 2 numeric data rows.
 * The producer writes plain comma-separated fields with no quoting,
 * so any parse-level irregularity is treated as a hard error.
 */
export function parseSweepCsv(text: string): SweepTable {
  if (text.trim() === "") {
    throw new CsvError("csv is empty");
  }
  const parsed = Papa.parse<string[]>(text, { delimiter: ",", skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    const e = parsed.errors[0]!;
    throw new CsvError(`malformed csv: ${e.message} (row ${e.row ?? "?"})`);
  }
  const grid = parsed.data;
  if (grid.length === 0) {
    throw new CsvError("csv is empty");
  }
  const columns = grid[0]!.map((c) => c.trim());
  if (columns.some((c) => c === "")) {
    throw new CsvError("csv header has an empty column name");
  }
  const body = grid.slice(1);
  if (body.length < 2) {
    throw new CsvError(`csv needs at least 2 data rows, found ${body.length}`);
  }
  const rows: number[][] = [];
  for (let i = 0; i < body.length; i++) {
    const raw = body[i]!;
    if (raw.length !== columns.length) {
      throw new CsvError(
        `row ${i + 2} has ${raw.length} fields, expected ${columns.length}`,
      );
    }
    const row: number[] = [];
    for (let j = 0; j < raw.length; j++) {
      const v = Number(raw[j]);
      if (!Number.isFinite(v)) {
        throw new CsvError(
          `row ${i + 2}, column "${columns[j]}": not a finite number: "${raw[j]}"`,
        );
      }
      row.push(v);
    }
    rows.push(row);
  }
  return { columns, rows };
}

/** Extract one column by name; unknown names are a hard error. */
export function column(table: SweepTable, name: string): number[] {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new CsvError(
      `csv has no column "${name}" (available: ${table.columns.join(", ")})`,
    );
  }
  return table.rows.map((r) => r[idx]!);
}
