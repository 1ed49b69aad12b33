import { readFileSync } from "node:fs";

import Papa from "papaparse";

import { AggregateRow, SchemaError, toAggregateRow, validateHeader } from "./schema.js";

/** Parse one harness aggregate CSV; strict header, nonempty body. */
export function readAggregateCsv(path: string): AggregateRow[] {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch (err) {
    throw new SchemaError(`cannot read ${path}: ${(err as Error).message}`);
  }
  const parsed = Papa.parse<Record<string, string>>(text, {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new SchemaError(`${path}: ${first.message} (row ${first.row})`);
  }
  validateHeader(parsed.meta.fields ?? []);
  if (parsed.data.length === 0) {
    throw new SchemaError(`${path}: no data rows`);
  }
  // line numbers: header is line 1
  return parsed.data.map((record, i) => toAggregateRow(record, i + 2));
}
