import { describe, expect, it } from "vitest";
import { parseSweepCsv } from "../src/csv.js";
import { renderFigure, yRange, FigureSpec } from "../src/plot.js";

const TABLE = parseSweepCsv(
  "param,C,D,Ef\n0,0,0.1,0.05\n0.25,0.2,0.2,0.1\n0.5,0.5,0.3,0.4\n1,1,0.4,0.9\n",
);

const THREE: FigureSpec = {
  series: [
    { column: "C", color: "red" },
    { column: "D", color: "green" },
    { column: "Ef", color: "blue" },
  ],
  xLabel: "alpha",
};

describe("yRange", () => {
  it("pads the data maximum by 5% above a zero floor", () => {
    expect(yRange(1)).toEqual([0, 1.05]);
    expect(yRange(0.4)[1]).toBeCloseTo(0.42, 12);
  });

  it("falls back to [0, 1] when the data is flat at zero", () => {
    expect(yRange(0)).toEqual([0, 1]);
  });
});

describe("renderFigure", () => {
  it("emits one polyline per series with its configured color", () => {
    const svg = renderFigure(TABLE, THREE);
    const strokes = [...svg.matchAll(/<polyline fill="none" stroke="([^"]+)"/g)].map(
      (m) => m[1],
    );
    expect(strokes).toEqual(["red", "green", "blue"]);
  });

  it("is deterministic for a fixed input", () => {
    expect(renderFigure(TABLE, THREE)).toBe(renderFigure(TABLE, THREE));
  });

  it("labels the x axis and writes a legend entry per series", () => {
    const svg = renderFigure(TABLE, THREE);
    expect(svg).toContain(">alpha</text>");
    for (const label of ["C", "D", "Ef"]) {
      expect(svg).toContain(`>${label}</text>`);
    }
  });

  it("prefers explicit legend labels over column names", () => {
    const svg = renderFigure(TABLE, {
      series: [{ column: "C", color: "red", label: "pair correlation" }],
      xLabel: "alpha",
    });
    expect(svg).toContain(">pair correlation</text>");
    expect(svg).not.toContain(">C</text>");
  });

  it("scales the y axis to 1.05x the data maximum by default", () => {
    // Data max is 1.0, so ticks run 0, 0.2, ..., 1 inside [0, 1.05].
    const svg = renderFigure(TABLE, THREE);
    expect(svg).toContain(">1</text>");
    expect(svg).not.toContain(">1.2</text>");
  });

  it("honors an explicit y ceiling", () => {
    const svg = renderFigure(TABLE, { ...THREE, yMax: 2 });
    expect(svg).toContain(">2</text>");
  });

  it("renders title and y label when given", () => {
    const svg = renderFigure(TABLE, { ...THREE, title: "werner", yLabel: "bits" });
    expect(svg).toContain(">werner</text>");
    expect(svg).toContain(">bits</text>");
  });

  it("escapes markup in labels", () => {
    const svg = renderFigure(TABLE, { ...THREE, title: 'a<b>&"c' });
    expect(svg).toContain("a&lt;b&gt;&amp;&quot;c");
    expect(svg).not.toContain("<b>");
  });

  it("rejects an empty series list", () => {
    expect(() => renderFigure(TABLE, { series: [], xLabel: "x" })).toThrow(/at least one/);
  });

  it("rejects unknown series columns by name", () => {
    expect(() =>
      renderFigure(TABLE, { series: [{ column: "Q2", color: "blue" }], xLabel: "x" }),
    ).toThrow(/no column "Q2"/);
  });

  it("rejects a degenerate x range", () => {
    const t = parseSweepCsv("param,C\n0.5,1\n0.5,2\n");
    expect(() =>
      renderFigure(t, { series: [{ column: "C", color: "red" }], xLabel: "x" }),
    ).toThrow(/spans no range/);
  });

  it("extends the y axis below zero when the data goes negative", () => {
    const t = parseSweepCsv("param,C\n0,-1\n1,1\n");
    const svg = renderFigure(t, { series: [{ column: "C", color: "red" }], xLabel: "x" });
    expect(svg).toContain(">-1</text>");
  });
});
