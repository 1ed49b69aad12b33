/**
 * Chart-option builders for the three figure kinds.
 *
 * Everything here is a pure function from parsed aggregate rows to an
 * echarts option object; rendering (and file IO) lives in render.ts.
 */

import type {
  CustomSeriesRenderItem,
  EChartsOption,
  SeriesOption,
} from "echarts/types/dist/echarts";

import { AggregateRow, SchemaError } from "./schema.js";

export type FigureKind = "ESTIMATION_ERROR" | "CONVERGENCE" | "SCALING_GRID";

export type AxisScale = "log" | "linear";

export interface FigureSpec {
  kind: FigureKind;
  /** aggregate CSV paths; SCALING_GRID takes one per (size, shots) cell */
  inputs: string[];
  output: string;
  /** y scale for the ΔEnergy/ΔFidelity axes (error curves stay linear) */
  yScale: AxisScale;
}

// fixed per-strategy colors so figures stay comparable across runs
const STRATEGY_COLORS: Record<string, string> = {
  biased: "#5470c6",
  stabilized: "#91cc75",
  corrected: "#fac858",
  regularized: "#ee6666",
};
const FALLBACK_COLORS = ["#73c0de", "#3ba272", "#fc8452", "#9a60b4"];

function color(strategy: string, index: number): string {
  return STRATEGY_COLORS[strategy] ?? FALLBACK_COLORS[index % FALLBACK_COLORS.length];
}

function strategiesInOrder(rows: AggregateRow[]): string[] {
  const seen: string[] = [];
  for (const row of rows) {
    if (!seen.includes(row.strategy)) seen.push(row.strategy);
  }
  return seen;
}

/**
 * Log axes cannot take zeros or negatives, but band lower edges (mean − std)
 * and fully converged metrics can produce both.  Clamp to half the smallest
 * positive value on the panel so the axis range stays tied to the data.
 */
function makeClamp(scale: AxisScale, values: number[]): (v: number) => number {
  if (scale !== "log") {
    return (v) => v;
  }
  const positives = values.filter((v) => v > 0 && Number.isFinite(v));
  const floor = positives.length > 0 ? Math.min(...positives) / 2 : 1e-12;
  return (v) => Math.max(v, floor);
}

/**
 * Mean line plus a ±1 std band.  The band is a custom-series polygon mapped
 * point-by-point through the axes (stacked areas misbehave on log scales);
 * with a single seed every std is 0 and the polygon collapses to the line.
 */
function bandSeries(
  name: string,
  points: Array<{ x: number; mean: number; std: number }>,
  lineColor: string,
  clamp: (v: number) => number,
  axisIndex: number,
): SeriesOption[] {
  const band = points.map((p) => [
    p.x,
    clamp(p.mean - p.std),
    clamp(p.mean + p.std),
  ]);
  const mean = points.map((p) => [p.x, clamp(p.mean)]);
  const renderBand: CustomSeriesRenderItem = (params, api) => {
    if (params.dataIndex !== 0) {
      return;
    }
    const outline: number[][] = [];
    for (let k = 0; k < band.length; k++) {
      outline.push(api.coord([band[k][0], band[k][2]]));
    }
    for (let k = band.length - 1; k >= 0; k--) {
      outline.push(api.coord([band[k][0], band[k][1]]));
    }
    return {
      type: "polygon",
      shape: { points: outline },
      style: { fill: lineColor, opacity: 0.18 },
    };
  };
  return [
    {
      name,
      type: "custom",
      xAxisIndex: axisIndex,
      yAxisIndex: axisIndex,
      silent: true,
      data: band,
      encode: { x: 0, y: [1, 2] },
      renderItem: renderBand,
      itemStyle: { color: lineColor },
    },
    {
      name,
      type: "line",
      xAxisIndex: axisIndex,
      yAxisIndex: axisIndex,
      symbol: "none",
      data: mean,
      lineStyle: { color: lineColor, width: 2 },
      itemStyle: { color: lineColor },
    },
  ];
}

/** Signed mean estimate error (reported minus true energy) per strategy. */
export function estimationErrorFigure(rows: AggregateRow[]): EChartsOption {
  const strategies = strategiesInOrder(rows);
  const series: SeriesOption[] = strategies.map((strategy, i) => ({
    name: strategy,
    type: "line",
    symbol: "none",
    data: rows
      .filter((r) => r.strategy === strategy)
      .map((r) => [r.t, r.estimate_error_mean]),
    lineStyle: { color: color(strategy, i), width: 2 },
    itemStyle: { color: color(strategy, i) },
  }));
  series.push({
    name: "zero",
    type: "line",
    symbol: "none",
    data: [],
    markLine: {
      silent: true,
      symbol: "none",
      lineStyle: { color: "#999", type: "dashed" },
      data: [{ yAxis: 0 }],
      label: { show: false },
    },
  });
  return {
    animation: false,
    title: { text: "Energy-estimate error vs iteration", left: "center" },
    legend: { data: strategies, bottom: 4 },
    grid: { left: 70, right: 30, top: 50, bottom: 60 },
    xAxis: { type: "value", name: "iteration", nameLocation: "middle", nameGap: 28 },
    yAxis: {
      type: "value",
      name: "mean estimate − true energy",
      nameLocation: "middle",
      nameGap: 48,
    },
    series,
  };
}

/** ΔEnergy and ΔFidelity convergence, mean with a ±1 std band per strategy. */
export function convergenceFigure(
  rows: AggregateRow[],
  scale: AxisScale,
): EChartsOption {
  const strategies = strategiesInOrder(rows);
  const panels: Array<{
    title: string;
    mean: (r: AggregateRow) => number;
    std: (r: AggregateRow) => number;
  }> = [
    {
      title: "ΔEnergy",
      mean: (r) => r.delta_energy_mean,
      std: (r) => r.delta_energy_std,
    },
    {
      title: "ΔFidelity",
      mean: (r) => r.delta_fidelity_mean,
      std: (r) => r.delta_fidelity_std,
    },
  ];
  const series: SeriesOption[] = [];
  panels.forEach((panel, axisIndex) => {
    const clamp = makeClamp(
      scale,
      rows.flatMap((r) => {
        const m = panel.mean(r);
        const s = panel.std(r);
        return [m - s, m, m + s];
      }),
    );
    strategies.forEach((strategy, i) => {
      const points = rows
        .filter((r) => r.strategy === strategy)
        .map((r) => ({ x: r.t, mean: panel.mean(r), std: panel.std(r) }));
      series.push(
        ...bandSeries(strategy, points, color(strategy, i), clamp, axisIndex),
      );
    });
  });
  return {
    animation: false,
    title: [
      { text: panels[0].title, left: "22%", top: 8, textAlign: "center" },
      { text: panels[1].title, left: "75%", top: 8, textAlign: "center" },
    ],
    legend: { data: strategies, bottom: 4 },
    grid: [
      { left: 70, right: "56%", top: 50, bottom: 60 },
      { left: "56%", right: 30, top: 50, bottom: 60 },
    ],
    xAxis: [0, 1].map((index) => ({
      gridIndex: index,
      type: "value" as const,
      name: "iteration",
      nameLocation: "middle" as const,
      nameGap: 28,
    })),
    yAxis: [0, 1].map((index) => ({
      gridIndex: index,
      type: scale === "log" ? ("log" as const) : ("value" as const),
    })),
    series,
  };
}

/** Final ΔEnergy/ΔFidelity vs shots per Pauli, one panel per (n_q, n_l). */
export function scalingGridFigure(
  files: AggregateRow[][],
  scale: AxisScale,
): EChartsOption {
  interface Cell {
    size: string;
    model: string;
    nQubits: number;
    nLayers: number;
    shots: number;
    finals: Map<string, { de: number; df: number }>;
  }
  const cells: Cell[] = files.map((rows) => {
    const { model, n_qubits, n_layers, shots_per_pauli } = rows[0];
    const finals = new Map<string, { de: number; df: number }>();
    for (const strategy of strategiesInOrder(rows)) {
      const mine = rows.filter((r) => r.strategy === strategy);
      const last = mine.reduce((a, b) => (b.t > a.t ? b : a));
      finals.set(strategy, {
        de: last.delta_energy_mean,
        df: last.delta_fidelity_mean,
      });
    }
    return {
      size: `${model} ${n_qubits}q ${n_layers} layers`,
      model,
      nQubits: n_qubits,
      nLayers: n_layers,
      shots: shots_per_pauli,
      finals,
    };
  });

  const sizes = [...new Map(cells.map((c) => [c.size, c])).entries()]
    .sort(
      ([, a], [, b]) =>
        a.model.localeCompare(b.model) ||
        a.nQubits - b.nQubits ||
        a.nLayers - b.nLayers,
    )
    .map(([label]) => label);
  const strategies = [
    ...new Set(cells.flatMap((c) => [...c.finals.keys()])),
  ];
  const metrics = [
    { title: "final ΔEnergy", pick: (v: { de: number; df: number }) => v.de },
    { title: "final ΔFidelity", pick: (v: { de: number; df: number }) => v.df },
  ];

  const nCols = sizes.length;
  const left = 7;
  const right = 3;
  const hGap = 5;
  const width = (100 - left - right - hGap * (nCols - 1)) / nCols;
  const grids: object[] = [];
  const xAxes: object[] = [];
  const yAxes: object[] = [];
  const titles: object[] = [];
  const series: SeriesOption[] = [];

  metrics.forEach((metric, rowIdx) => {
    const clamp = makeClamp(
      scale,
      cells.flatMap((c) => [...c.finals.values()].map(metric.pick)),
    );
    sizes.forEach((size, colIdx) => {
      const axisIndex = rowIdx * nCols + colIdx;
      const gLeft = left + colIdx * (width + hGap);
      grids.push({
        left: `${gLeft}%`,
        width: `${width}%`,
        top: rowIdx === 0 ? "12%" : "58%",
        height: "30%",
      });
      xAxes.push({
        gridIndex: axisIndex,
        type: "value",
        name: rowIdx === 1 ? "shots per Pauli" : "",
        nameLocation: "middle",
        nameGap: 26,
      });
      yAxes.push({
        gridIndex: axisIndex,
        type: scale === "log" ? "log" : "value",
        name: colIdx === 0 ? metric.title : "",
      });
      if (rowIdx === 0) {
        titles.push({
          text: size,
          left: `${gLeft + width / 2}%`,
          top: "4%",
          textAlign: "center",
          textStyle: { fontSize: 13 },
        });
      }
      strategies.forEach((strategy, i) => {
        const points = cells
          .filter((c) => c.size === size && c.finals.has(strategy))
          .sort((a, b) => a.shots - b.shots)
          .map((c) => [c.shots, clamp(metric.pick(c.finals.get(strategy)!))]);
        series.push({
          name: strategy,
          type: "line",
          xAxisIndex: axisIndex,
          yAxisIndex: axisIndex,
          data: points,
          lineStyle: { color: color(strategy, i), width: 2 },
          itemStyle: { color: color(strategy, i) },
        });
      });
    });
  });

  return {
    animation: false,
    title: titles as EChartsOption["title"],
    legend: { data: strategies, bottom: 2 },
    grid: grids as EChartsOption["grid"],
    xAxis: xAxes as EChartsOption["xAxis"],
    yAxis: yAxes as EChartsOption["yAxis"],
    series,
  };
}

/** Dispatch on figure kind; `data` holds one parsed table per input path. */
export function buildFigure(
  spec: FigureSpec,
  data: AggregateRow[][],
): EChartsOption {
  if (data.length === 0) {
    throw new SchemaError("no input files");
  }
  switch (spec.kind) {
    case "ESTIMATION_ERROR":
      return estimationErrorFigure(data.flat());
    case "CONVERGENCE":
      return convergenceFigure(data.flat(), spec.yScale);
    case "SCALING_GRID":
      return scalingGridFigure(data, spec.yScale);
  }
}
