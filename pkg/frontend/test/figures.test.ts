import { describe, expect, it } from "vitest";

import { readAggregateCsv } from "../src/csv.js";
import {
  buildFigure,
  convergenceFigure,
  estimationErrorFigure,
  scalingGridFigure,
} from "../src/figures.js";
import type { AggregateRow } from "../src/schema.js";
import { SchemaError } from "../src/schema.js";

const fixture = (name: string) => new URL(`./fixtures/${name}`, import.meta.url).pathname;

function makeRow(overrides: Partial<AggregateRow>): AggregateRow {
  return {
    strategy: "biased",
    t: 8,
    n_seeds: 2,
    delta_energy_mean: 0.5,
    delta_energy_std: 0.1,
    delta_energy_median: 0.5,
    delta_fidelity_mean: 0.2,
    delta_fidelity_std: 0.05,
    delta_fidelity_median: 0.2,
    estimate_error_mean: -0.3,
    estimate_error_std: 0.2,
    estimate_error_median: -0.3,
    cumulative_shots_mean: 4800,
    model: "tfim",
    n_qubits: 2,
    n_layers: 1,
    shots_per_pauli: 100,
    n_sweeps: 4,
    ...overrides,
  };
}

type AnySeries = { name?: unknown; type?: unknown; data?: unknown };

function seriesOf(option: object): AnySeries[] {
  return (option as { series: AnySeries[] }).series;
}

describe("estimationErrorFigure", () => {
  it("plots one signed mean-error line per strategy on a linear axis", () => {
    const rows = readAggregateCsv(fixture("aggregate_small.csv"));
    const option = estimationErrorFigure(rows);
    const lines = seriesOf(option).filter((s) => s.name !== "zero");
    expect(lines.map((s) => s.name)).toEqual([
      "biased",
      "stabilized",
      "corrected",
      "regularized",
    ]);
    const biased = lines[0].data as number[][];
    const source = rows.filter((r) => r.strategy === "biased");
    expect(biased.map((d) => d[0])).toEqual(source.map((r) => r.t));
    expect(biased.map((d) => d[1])).toEqual(
      source.map((r) => r.estimate_error_mean),
    );
    // signed quantity: axis must stay linear and data keeps its sign
    expect((option as { yAxis: { type: string } }).yAxis.type).toBe("value");
    expect(biased.some((d) => d[1] < 0)).toBe(true);
  });
});

describe("convergenceFigure", () => {
  it("draws a mean line plus band per strategy on two panels", () => {
    const rows = readAggregateCsv(fixture("aggregate_small.csv"));
    const option = convergenceFigure(rows, "linear");
    const bands = seriesOf(option).filter((s) => s.type === "custom");
    const lines = seriesOf(option).filter((s) => s.type === "line");
    expect(bands.length).toBe(8); // 4 strategies x 2 panels
    expect(lines.length).toBe(8);
    const band = bands[0].data as number[][];
    const line = lines[0].data as number[][];
    const source = rows.filter((r) => r.strategy === "biased");
    band.forEach((d, i) => {
      expect(d[1]).toBeCloseTo(
        source[i].delta_energy_mean - source[i].delta_energy_std,
        12,
      );
      expect(d[2]).toBeCloseTo(
        source[i].delta_energy_mean + source[i].delta_energy_std,
        12,
      );
      expect(line[i][1]).toBeCloseTo(source[i].delta_energy_mean, 12);
    });
  });

  it("collapses bands to zero width for single-seed input", () => {
    const rows = readAggregateCsv(fixture("aggregate_single_seed.csv"));
    expect(rows.every((r) => r.n_seeds === 1)).toBe(true);
    for (const scale of ["log", "linear"] as const) {
      const option = convergenceFigure(rows, scale);
      const bands = seriesOf(option).filter((s) => s.type === "custom");
      expect(bands.length).toBeGreaterThan(0);
      for (const band of bands) {
        for (const d of band.data as number[][]) {
          expect(d[2] - d[1]).toBe(0);
        }
      }
    }
  });

  it("keeps log-scale values strictly positive without distorting the range", () => {
    const rows = [
      makeRow({ t: 8, delta_energy_mean: 0.4, delta_energy_std: 0.6 }),
      makeRow({ t: 16, delta_energy_mean: 0.0, delta_energy_std: 0.0 }),
    ];
    const option = convergenceFigure(rows, "log");
    const [band] = seriesOf(option).filter((s) => s.type === "custom");
    for (const d of band.data as number[][]) {
      expect(d[1]).toBeGreaterThan(0);
      expect(d[2]).toBeGreaterThan(0);
      // clamp floor tracks the data rather than an absolute epsilon
      expect(d[1]).toBeGreaterThanOrEqual(0.05);
    }
    const axes = (option as { yAxis: Array<{ type: string }> }).yAxis;
    expect(axes.every((a) => a.type === "log")).toBe(true);
  });
});

describe("scalingGridFigure", () => {
  const files = [
    "sweep_q2_s10.csv",
    "sweep_q2_s20.csv",
    "sweep_q3_s10.csv",
    "sweep_q3_s20.csv",
  ].map((n) => readAggregateCsv(fixture(n)));

  it("lays out one panel per problem size and two metric rows", () => {
    const option = scalingGridFigure(files, "log");
    const grids = (option as { grid: object[] }).grid;
    expect(grids.length).toBe(4); // 2 sizes x 2 metrics
    const titles = (option as { title: Array<{ text: string }> }).title;
    expect(titles.map((t) => t.text)).toEqual([
      "tfim 2q 1 layers",
      "tfim 3q 1 layers",
    ]);
  });

  it("plots final-iteration values against shots per Pauli", () => {
    const option = scalingGridFigure(files, "linear");
    const series = seriesOf(option) as Array<AnySeries & { xAxisIndex: number }>;
    const biasedPanel1 = series.find(
      (s) => s.name === "biased" && s.xAxisIndex === 1,
    );
    expect(biasedPanel1).toBeDefined();
    const data = biasedPanel1!.data as number[][];
    expect(data.map((d) => d[0])).toEqual([10, 20]);
    // q3 files carry t = 16 and 24; the grid must use the final row
    const q3s10 = files[2].filter((r) => r.strategy === "biased");
    const final = q3s10.reduce((a, b) => (b.t > a.t ? b : a));
    expect(final.t).toBe(24);
    expect(data[0][1]).toBeCloseTo(final.delta_energy_mean, 12);
  });
});

describe("buildFigure", () => {
  it("rejects an empty input list", () => {
    expect(() =>
      buildFigure(
        { kind: "CONVERGENCE", inputs: [], output: "x.svg", yScale: "log" },
        [],
      ),
    ).toThrow(SchemaError);
  });
});
