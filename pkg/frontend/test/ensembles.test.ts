import { describe, expect, it } from "vitest";

import { readAggregateCsv } from "../src/csv.js";
import { buildFigure } from "../src/figures.js";
import type { FigureKind } from "../src/figures.js";
import { renderSvg } from "../src/render.js";

const fixture = (name: string) => new URL(`./fixtures/${name}`, import.meta.url).pathname;

// full-size ensemble outputs from the optimizer harness (50 and 80 seeds)
const ENSEMBLES = [
  "aggregate_tracking_50seed.csv",
  "aggregate_benchmark_80seed.csv",
];

describe("ensemble aggregates", () => {
  it.each(ENSEMBLES)("%s renders all three figure kinds", (name) => {
    const rows = readAggregateCsv(fixture(name));
    expect(rows[0].n_qubits).toBe(5);
    expect(rows[0].n_layers).toBe(3);
    const kinds: FigureKind[] = [
      "ESTIMATION_ERROR",
      "CONVERGENCE",
      "SCALING_GRID",
    ];
    for (const kind of kinds) {
      const svg = renderSvg(
        buildFigure(
          { kind, inputs: [fixture(name)], output: "x.svg", yScale: "log" },
          [rows],
        ),
      );
      expect(svg.startsWith("<svg")).toBe(true);
      expect(svg).not.toContain("NaN");
      expect(svg).not.toContain("Infinity");
    }
  });

  it("shows the reuse bias the tracking ensemble exists to expose", () => {
    const rows = readAggregateCsv(fixture("aggregate_tracking_50seed.csv"));
    const finalT = Math.max(...rows.map((r) => r.t));
    const finalErr = (strategy: string) =>
      rows.find((r) => r.strategy === strategy && r.t === finalT)!
        .estimate_error_mean;
    expect(finalErr("biased")).toBeLessThan(0);
    expect(Math.abs(finalErr("biased"))).toBeGreaterThan(
      5 * Math.abs(finalErr("corrected")),
    );
  });
});
