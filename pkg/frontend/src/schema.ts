/**
 * Typed view of the optimizer harness CSV output.
 *
 * The aggregate schema is the contract between the experiment driver and
 * this package: per-(strategy, iteration) statistics across seeds plus the
 * run settings that produced them.  Header validation is strict and names
 * the first offending column so a drifted producer fails loudly.
 */

export const AGGREGATE_COLUMNS = [
  "strategy",
  "t",
  "n_seeds",
  "delta_energy_mean",
  "delta_energy_std",
  "delta_energy_median",
  "delta_fidelity_mean",
  "delta_fidelity_std",
  "delta_fidelity_median",
  "estimate_error_mean",
  "estimate_error_std",
  "estimate_error_median",
  "cumulative_shots_mean",
  "model",
  "n_qubits",
  "n_layers",
  "shots_per_pauli",
  "n_sweeps",
] as const;

export type AggregateColumn = (typeof AGGREGATE_COLUMNS)[number];

export interface AggregateRow {
  strategy: string;
  t: number;
  n_seeds: number;
  delta_energy_mean: number;
  delta_energy_std: number;
  delta_energy_median: number;
  delta_fidelity_mean: number;
  delta_fidelity_std: number;
  delta_fidelity_median: number;
  estimate_error_mean: number;
  estimate_error_std: number;
  estimate_error_median: number;
  cumulative_shots_mean: number;
  model: string;
  n_qubits: number;
  n_layers: number;
  shots_per_pauli: number;
  n_sweeps: number;
}

const STRING_COLUMNS: ReadonlySet<AggregateColumn> = new Set([
  "strategy",
  "model",
]);

export class SchemaError extends Error {}

/** Reject a header that differs from the harness schema, naming the column. */
export function validateHeader(fields: readonly string[]): void {
  const limit = Math.max(fields.length, AGGREGATE_COLUMNS.length);
  for (let i = 0; i < limit; i++) {
    const expected = AGGREGATE_COLUMNS[i];
    const got = fields[i];
    if (expected === undefined) {
      throw new SchemaError(`unexpected extra column "${got}"`);
    }
    if (got === undefined) {
      throw new SchemaError(`missing column "${expected}"`);
    }
    if (got !== expected) {
      throw new SchemaError(
        `column ${i + 1} is "${got}", expected "${expected}"`,
      );
    }
  }
}

/** Coerce one parsed CSV record, naming the column on any bad number. */
export function toAggregateRow(
  record: Record<string, string>,
  line: number,
): AggregateRow {
  const row: Record<string, string | number> = {};
  for (const column of AGGREGATE_COLUMNS) {
    const raw = record[column];
    if (raw === undefined || raw === "") {
      throw new SchemaError(`line ${line}: column "${column}" is empty`);
    }
    if (STRING_COLUMNS.has(column)) {
      row[column] = raw;
      continue;
    }
    const value = Number(raw);
    if (!Number.isFinite(value)) {
      throw new SchemaError(
        `line ${line}: column "${column}" is not a number (got "${raw}")`,
      );
    }
    row[column] = value;
  }
  return row as unknown as AggregateRow;
}
