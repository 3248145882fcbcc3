/**
 * Strict reader for the sweep CSV contract:
 *   axis,vacuum,status,<value columns...>,err_<output>...
 * Complex outputs arrive split as <name>_re / <name>_im.  Anything off the
 * contract fails loudly: this layer is the only coupling to the solver.
 */

export class SchemaError extends Error {}

const SCALAR_OUTPUTS = ["concurrence", "mutual_information", "estimator", "edr"];
const COMPLEX_OUTPUTS = ["L_AA", "L_BB", "L_AB", "M_nonlocal"];

const VALUE_COLUMNS = new Set<string>([
  ...SCALAR_OUTPUTS,
  ...COMPLEX_OUTPUTS.flatMap((name) => [`${name}_re`, `${name}_im`]),
]);

const ERR_COLUMNS = new Set<string>(
  [...SCALAR_OUTPUTS, ...COMPLEX_OUTPUTS].map((name) => `err_${name}`),
);

export interface SweepRow {
  axis: number;
  vacuum: string;
  status: string;
  values: Record<string, number>;
}

export interface SweepTable {
  valueColumns: string[];
  errColumns: string[];
  rows: SweepRow[];
}

export function parseSweepCsv(text: string): SweepTable {
  const lines = text
    .split(/\r?\n/)
    .map((line) => line.trim())
    .filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new SchemaError("empty CSV: no header row");
  }
  const header = lines[0].split(",");
  if (header[0] !== "axis" || header[1] !== "vacuum" || header[2] !== "status") {
    throw new SchemaError(
      `header must start with axis,vacuum,status (got ${header.slice(0, 3).join(",")})`,
    );
  }
  const rest = header.slice(3);
  const firstErr = rest.findIndex((col) => col.startsWith("err_"));
  const valueColumns = firstErr === -1 ? rest : rest.slice(0, firstErr);
  const errColumns = firstErr === -1 ? [] : rest.slice(firstErr);
  for (const col of valueColumns) {
    if (!VALUE_COLUMNS.has(col)) {
      throw new SchemaError(`unknown value column '${col}'`);
    }
  }
  for (const col of errColumns) {
    if (!ERR_COLUMNS.has(col)) {
      throw new SchemaError(`unknown error column '${col}'`);
    }
  }
  if (lines.length === 1) {
    throw new SchemaError("CSV has a header but no data rows");
  }

  const rows: SweepRow[] = [];
  for (const [index, line] of lines.slice(1).entries()) {
    const cells = line.split(",");
    if (cells.length !== header.length) {
      throw new SchemaError(
        `row ${index + 2} has ${cells.length} cells, header has ${header.length}`,
      );
    }
    const axis = Number(cells[0]);
    if (!Number.isFinite(axis)) {
      throw new SchemaError(`row ${index + 2}: axis value '${cells[0]}' is not a number`);
    }
    const values: Record<string, number> = {};
    rest.forEach((col, k) => {
      values[col] = Number(cells[3 + k]);
    });
    rows.push({ axis, vacuum: cells[1], status: cells[2], values });
  }
  return { valueColumns, errColumns, rows };
}

/** Rows grouped by vacuum in first-appearance order. */
export function byVacuum(rows: SweepRow[]): Map<string, SweepRow[]> {
  const groups = new Map<string, SweepRow[]>();
  for (const row of rows) {
    const bucket = groups.get(row.vacuum);
    if (bucket) {
      bucket.push(row);
    } else {
      groups.set(row.vacuum, [row]);
    }
  }
  return groups;
}
