export { parseSweepCsv, column, CsvError } from "./csv.js";
export { renderFigure, yRange, WIDTH, HEIGHT } from "./plot.js";
export type { SweepTable } from "./csv.js";
export type { Series, FigureSpec } from "./plot.js";
export { main } from "./cli.js";
