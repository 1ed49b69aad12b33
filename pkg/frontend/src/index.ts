export { AGGREGATE_COLUMNS, SchemaError } from "./schema.js";
export type { AggregateRow } from "./schema.js";
export { readAggregateCsv } from "./csv.js";
export {
  buildFigure,
  convergenceFigure,
  estimationErrorFigure,
  scalingGridFigure,
} from "./figures.js";
export type { AxisScale, FigureKind, FigureSpec } from "./figures.js";
export { renderSvg, renderSvgToFile } from "./render.js";
export { main, parseKind, runPlot } from "./cli.js";
