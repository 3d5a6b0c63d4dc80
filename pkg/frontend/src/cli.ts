#!/usr/bin/env node
import { parseArgs } from "node:util";
import { readFileSync, writeFileSync, realpathSync } from "node:fs";
import { pathToFileURL } from "node:url";
import { parseSweepCsv, CsvError } from "./csv.js";
import { renderFigure, Series } from "./plot.js";

const USAGE = `usage: mubcorr-plots render --csv FILE --series COL:COLOR[:LABEL][,...] --out FILE.svg
                           [--xlabel TEXT] [--ylabel TEXT] [--title TEXT] [--y-max N]`;

class UsageError extends Error {}

/** SVG strokes come straight from the command line; keep them to safe tokens. */
const COLOR_RE = /^([a-zA-Z]+|#[0-9a-fA-F]{3}|#[0-9a-fA-F]{6})$/;

function parseSeriesArg(arg: string): Series[] {
  const out: Series[] = [];
  for (const token of arg.split(",")) {
    const parts = token.split(":");
    if (parts.length < 2 || parts.length > 3 || parts[0] === "" || parts[1] === "") {
      throw new UsageError(`bad series "${token}", expected COL:COLOR or COL:COLOR:LABEL`);
    }
    if (!COLOR_RE.test(parts[1]!)) {
      throw new UsageError(`bad color "${parts[1]}" in series "${token}"`);
    }
    out.push({ column: parts[0]!, color: parts[1]!, label: parts[2] });
  }
  return out;
}

function cmdRender(argv: string[]): void {
  const { values } = parseArgs({
    args: argv,
    options: {
      csv: { type: "string" },
      series: { type: "string" },
      out: { type: "string" },
      xlabel: { type: "string" },
      ylabel: { type: "string" },
      title: { type: "string" },
      "y-max": { type: "string" },
    },
  });
  if (!values.csv || !values.series || !values.out) {
    throw new UsageError("--csv, --series, and --out are required");
  }
  if (!values.out.endsWith(".svg")) {
    throw new UsageError(`output must be an .svg file, got "${values.out}"`);
  }
  let yMax: number | undefined;
  if (values["y-max"] !== undefined) {
    yMax = Number(values["y-max"]);
    if (!Number.isFinite(yMax) || yMax <= 0) {
      throw new UsageError(`--y-max must be a positive number, got "${values["y-max"]}"`);
    }
  }

  const table = parseSweepCsv(readFileSync(values.csv, "utf8"));
  const svg = renderFigure(table, {
    series: parseSeriesArg(values.series),
    xLabel: values.xlabel ?? table.columns[0] ?? "param",
    yLabel: values.ylabel,
    title: values.title,
    yMax,
  });
  writeFileSync(values.out, svg, "utf8");
}

export function main(
  argv: string[],
  stderr: (line: string) => void = (line) => process.stderr.write(line + "\n"),
): number {
  try {
    const [command, ...rest] = argv;
    if (command === undefined) {
      throw new UsageError("no command given");
    }
    if (command !== "render") {
      throw new UsageError(`unknown command "${command}"`);
    }
    cmdRender(rest);
    return 0;
  } catch (err) {
    if (err instanceof UsageError || err instanceof TypeError) {
      // parseArgs reports unknown or malformed flags as TypeError.
      stderr(`error: ${(err as Error).message}`);
      stderr(USAGE);
      return 1;
    }
    if (err instanceof CsvError || (err as NodeJS.ErrnoException)?.code !== undefined) {
      stderr(`error: ${(err as Error).message}`);
      return 1;
    }
    throw err;
  }
}

const isMain =
  process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(realpathSync(process.argv[1])).href;
if (isMain) {
  process.exit(main(process.argv.slice(2)));
}
