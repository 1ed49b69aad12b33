#!/usr/bin/env node
/**
 * `smovqe-plot plot --kind <kind> --in <csv...> --out <file>`
 *
 * Renders SVG figures from the optimizer harness's aggregate CSV files.
 */

import { pathToFileURL } from "node:url";

import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { readAggregateCsv } from "./csv.js";
import {
  AxisScale,
  FigureKind,
  FigureSpec,
  buildFigure,
} from "./figures.js";
import { renderSvgToFile } from "./render.js";
import { SchemaError } from "./schema.js";

const KIND_ALIASES: Record<string, FigureKind> = {
  ESTIMATION_ERROR: "ESTIMATION_ERROR",
  "estimation-error": "ESTIMATION_ERROR",
  estimation_error: "ESTIMATION_ERROR",
  CONVERGENCE: "CONVERGENCE",
  convergence: "CONVERGENCE",
  SCALING_GRID: "SCALING_GRID",
  "scaling-grid": "SCALING_GRID",
  scaling_grid: "SCALING_GRID",
};

export function parseKind(raw: string): FigureKind {
  const kind = KIND_ALIASES[raw];
  if (kind === undefined) {
    throw new SchemaError(
      `unknown figure kind "${raw}" (expected one of: estimation-error, convergence, scaling-grid)`,
    );
  }
  return kind;
}

export function runPlot(spec: FigureSpec, width: number, height: number): void {
  const tables = spec.inputs.map((path) => readAggregateCsv(path));
  const option = buildFigure(spec, tables);
  renderSvgToFile(option, spec.output, { width, height });
}

export async function main(argv: string[]): Promise<number> {
  let exitCode = 0;
  let reported = false;
  // yargs both invokes fail() and rethrows from parse(), so dedupe output
  const report = (message: string) => {
    if (!reported) {
      process.stderr.write(`error: ${message}\n`);
      reported = true;
    }
    exitCode = 1;
  };
  const parser = yargs(argv)
    .scriptName("smovqe-plot")
    .command(
      "plot",
      "render an SVG figure from aggregate CSV files",
      (cmd) =>
        cmd
          .option("kind", {
            type: "string",
            demandOption: true,
            describe:
              "figure kind: estimation-error | convergence | scaling-grid",
          })
          .option("in", {
            type: "string",
            array: true,
            demandOption: true,
            describe: "aggregate CSV input file(s)",
          })
          .option("out", {
            type: "string",
            demandOption: true,
            describe: "output SVG path",
          })
          .option("scale", {
            type: "string",
            choices: ["log", "linear"] as const,
            default: "log",
            describe: "y scale for ΔEnergy/ΔFidelity axes",
          })
          .option("width", { type: "number", default: 900 })
          .option("height", { type: "number", default: 520 }),
      (args) => {
        const spec: FigureSpec = {
          kind: parseKind(args.kind),
          inputs: args.in as string[],
          output: args.out,
          yScale: args.scale as AxisScale,
        };
        runPlot(spec, args.width, args.height);
        process.stderr.write(`wrote ${spec.output}\n`);
      },
    )
    .demandCommand(1, "specify a command (plot)")
    .strict()
    .exitProcess(false)
    .fail((msg, err) => {
      report(msg ?? err?.message ?? "invalid arguments");
    });
  try {
    await parser.parse();
  } catch (err) {
    if (err instanceof Error) {
      report(err.message);
    } else {
      throw err;
    }
  }
  return exitCode;
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(process.argv[1]).href;

if (invokedDirectly) {
  main(hideBin(process.argv)).then((code) => {
    process.exitCode = code;
  });
}
