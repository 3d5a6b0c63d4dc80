import { SweepTable, column, CsvError } from "./csv.js";

export interface Series {
  /** CSV column holding the y values. */
  column: string;
  /** SVG stroke color. Colors are per-figure configuration, never baked in. */
  color: string;
  /** Legend text; defaults to the column name. */
  label?: string;
}

export interface FigureSpec {
  series: Series[];
  xLabel: string;
  yLabel?: string;
  title?: string;
  /** Y axis ceiling; defaults to 1.05 * data maximum. */
  yMax?: number;
}

export const WIDTH = 640;
export const HEIGHT = 400;
const MARGIN = { left: 58, right: 16, top: 16, bottom: 48 };
const TITLE_PAD = 22;

/** Default y range: floor at zero, 5% headroom over the data maximum. */
export function yRange(dataMax: number): [number, number] {
  return [0, dataMax > 0 ? dataMax * 1.05 : 1];
}

/** Largest "nice" step (1/2/2.5/5 times a power of ten) not above `raw`. */
function niceStep(raw: number): number {
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  for (const m of [5, 2.5, 2, 1]) {
    if (m * mag <= raw + 1e-12 * mag) return m * mag;
  }
  return mag;
}

function ticks(lo: number, hi: number, target: number): number[] {
  const step = niceStep((hi - lo) / target);
  const out: number[] = [];
  for (let v = Math.ceil(lo / step - 1e-9) * step; v <= hi + 1e-9 * step; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

/** Round away float noise so tick labels stay short and stable. */
function fmtNum(v: number): string {
  return String(Number(v.toFixed(10)));
}

function fmtCoord(v: number): string {
  return v.toFixed(2);
}

function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/**
 * Render a multi-series line figure to an SVG string.
 *
 * Pure function of its inputs: no clock, no randomness, no environment,
 * so a fixed (table, spec) pair always yields identical bytes. All values
 * are taken from the table as-is; nothing numerical is recomputed here.
 */
export function renderFigure(table: SweepTable, spec: FigureSpec): string {
  if (spec.series.length === 0) {
    throw new CsvError("figure needs at least one series");
  }
  const xName = table.columns[0];
  if (xName === undefined) {
    throw new CsvError("csv has no columns");
  }
  const xs = column(table, xName);
  const ys = spec.series.map((s) => column(table, s.column));

  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  if (!(xMax > xMin)) {
    throw new CsvError(`x column "${xName}" spans no range`);
  }
  const dataMax = Math.max(...ys.map((col) => Math.max(...col)));
  const dataMin = Math.min(...ys.map((col) => Math.min(...col)));
  const [, yDefault] = yRange(dataMax);
  const yHi = spec.yMax ?? yDefault;
  const yLo = Math.min(0, dataMin);

  const top = MARGIN.top + (spec.title ? TITLE_PAD : 0);
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - top - MARGIN.bottom;
  const px = (x: number) => MARGIN.left + ((x - xMin) / (xMax - xMin)) * plotW;
  const py = (y: number) => top + (1 - (y - yLo) / (yHi - yLo)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif" font-size="12">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);

  if (spec.title) {
    parts.push(
      `<text x="${fmtCoord(MARGIN.left + plotW / 2)}" y="${fmtCoord(MARGIN.top)}" ` +
        `text-anchor="middle" font-size="14">${escapeXml(spec.title)}</text>`,
    );
  }

  // Gridlines and ticks share positions so the axes stay visually aligned.
  const xTicks = ticks(xMin, xMax, 5);
  const yTicks = ticks(yLo, yHi, 5);
  for (const t of yTicks) {
    const y = fmtCoord(py(t));
    parts.push(
      `<line x1="${fmtCoord(MARGIN.left)}" y1="${y}" x2="${fmtCoord(MARGIN.left + plotW)}" y2="${y}" stroke="#dddddd" stroke-width="0.5"/>`,
    );
    parts.push(
      `<text x="${fmtCoord(MARGIN.left - 6)}" y="${y}" text-anchor="end" dominant-baseline="middle">${fmtNum(t)}</text>`,
    );
  }
  for (const t of xTicks) {
    const x = fmtCoord(px(t));
    const y0 = fmtCoord(top + plotH);
    parts.push(
      `<line x1="${x}" y1="${y0}" x2="${x}" y2="${fmtCoord(top + plotH + 4)}" stroke="black" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${x}" y="${fmtCoord(top + plotH + 18)}" text-anchor="middle">${fmtNum(t)}</text>`,
    );
  }
  const axisY = fmtCoord(top + plotH);
  parts.push(
    `<line x1="${fmtCoord(MARGIN.left)}" y1="${axisY}" x2="${fmtCoord(MARGIN.left + plotW)}" y2="${axisY}" stroke="black" stroke-width="1"/>`,
  );
  parts.push(
    `<line x1="${fmtCoord(MARGIN.left)}" y1="${fmtCoord(top)}" x2="${fmtCoord(MARGIN.left)}" y2="${axisY}" stroke="black" stroke-width="1"/>`,
  );
  parts.push(
    `<text x="${fmtCoord(MARGIN.left + plotW / 2)}" y="${fmtCoord(HEIGHT - 10)}" text-anchor="middle">${escapeXml(spec.xLabel)}</text>`,
  );
  if (spec.yLabel) {
    const cy = fmtCoord(top + plotH / 2);
    parts.push(
      `<text x="14" y="${cy}" text-anchor="middle" transform="rotate(-90 14 ${cy})">${escapeXml(spec.yLabel)}</text>`,
    );
  }

  for (let i = 0; i < spec.series.length; i++) {
    const s = spec.series[i]!;
    const pts = xs
      .map((x, k) => `${fmtCoord(px(x))},${fmtCoord(py(ys[i]![k]!))}`)
      .join(" ");
    parts.push(
      `<polyline fill="none" stroke="${escapeXml(s.color)}" stroke-width="1.5" points="${pts}"/>`,
    );
  }

  // Legend in the top-right corner of the plot area.
  const labels = spec.series.map((s) => s.label ?? s.column);
  const legendW = Math.max(...labels.map((l) => l.length)) * 7 + 36;
  const lx = MARGIN.left + plotW - legendW;
  for (let i = 0; i < spec.series.length; i++) {
    const ly = top + 10 + i * 16;
    parts.push(
      `<line x1="${fmtCoord(lx)}" y1="${fmtCoord(ly)}" x2="${fmtCoord(lx + 22)}" y2="${fmtCoord(ly)}" stroke="${escapeXml(spec.series[i]!.color)}" stroke-width="1.5"/>`,
    );
    parts.push(
      `<text x="${fmtCoord(lx + 28)}" y="${fmtCoord(ly)}" dominant-baseline="middle">${escapeXml(labels[i]!)}</text>`,
    );
  }

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
