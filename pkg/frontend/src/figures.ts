/**
 * Figure builders: sweep tables -> echarts options.  No physics happens here;
 * the CSV is the single source of numerical truth.
 */

import type { EChartsOption, SeriesOption } from "echarts";
import { byVacuum, SchemaError, SweepRow, SweepTable } from "./csv";

export type FigureKind =
  | "concurrence_sweep"
  | "mutual_info_sweep"
  | "matrix_elements"
  | "estimator_overlay"
  | "edr_curves";

export interface ReferenceLine {
  label: string;
  value: number;
}

export interface FigureSpec {
  input: string;
  kind: FigureKind;
  title?: string;
  xLabel?: string;
  referenceLines?: ReferenceLine[];
  allowFlagged?: boolean;
  width?: number;
  height?: number;
}

const REQUIRED: Record<FigureKind, string[]> = {
  concurrence_sweep: ["concurrence"],
  mutual_info_sweep: ["mutual_information"],
  matrix_elements: ["L_AA_re", "M_nonlocal_re", "M_nonlocal_im"],
  estimator_overlay: ["estimator", "concurrence"],
  edr_curves: ["edr"],
};

const KIND_TITLES: Record<FigureKind, string> = {
  concurrence_sweep: "Concurrence",
  mutual_info_sweep: "Mutual information",
  matrix_elements: "Density-matrix ingredients",
  estimator_overlay: "Concurrence and signalling estimator",
  edr_curves: "Excitation-to-deexcitation ratio",
};

const DEFAULT_X: Record<FigureKind, string> = {
  concurrence_sweep: "sweep value (units of σ)",
  mutual_info_sweep: "sweep value (units of σ)",
  matrix_elements: "sweep value (units of σ)",
  estimator_overlay: "sweep value (units of σ)",
  edr_curves: "interaction time (σ-based config units)",
};

export function validateFigureSpec(raw: unknown): FigureSpec {
  if (typeof raw !== "object" || raw === null) {
    throw new SchemaError("figure spec must be a JSON object");
  }
  const spec = raw as Record<string, unknown>;
  if (typeof spec.input !== "string" || spec.input.length === 0) {
    throw new SchemaError("figure spec needs an 'input' CSV path");
  }
  if (typeof spec.kind !== "string" || !(spec.kind in REQUIRED)) {
    throw new SchemaError(
      `figure spec 'kind' must be one of ${Object.keys(REQUIRED).join(", ")}`,
    );
  }
  if (spec.referenceLines !== undefined) {
    if (!Array.isArray(spec.referenceLines)) {
      throw new SchemaError("'referenceLines' must be a list of {label, value}");
    }
    for (const line of spec.referenceLines) {
      const entry = line as Record<string, unknown>;
      if (typeof entry.label !== "string" || typeof entry.value !== "number") {
        throw new SchemaError("'referenceLines' entries need a string label and numeric value");
      }
    }
  }
  return spec as unknown as FigureSpec;
}

function usableRows(table: SweepTable, spec: FigureSpec): SweepRow[] {
  const needed = REQUIRED[spec.kind];
  for (const col of needed) {
    if (!table.valueColumns.includes(col)) {
      throw new SchemaError(
        `figure '${spec.kind}' needs column '${col}'; CSV has [${table.valueColumns.join(", ")}]`,
      );
    }
  }
  const bad = table.rows.filter((row) => row.status !== "ok");
  if (bad.length > 0 && !spec.allowFlagged) {
    throw new SchemaError(
      `${bad.length} rows have status != ok (first: '${bad[0].status}'); ` +
        "pass --allow-flagged to render anyway",
    );
  }
  const rows = table.rows.filter((row) =>
    needed.every((col) => Number.isFinite(row.values[col])),
  );
  if (rows.length === 0) {
    throw new SchemaError("empty selection: no usable rows after filtering");
  }
  return rows;
}

function lineSeries(name: string, points: [number, number][]): SeriesOption {
  return {
    type: "line",
    name,
    data: points,
    showSymbol: true,
    symbolSize: 5,
    animation: false,
  };
}

export function buildFigure(spec: FigureSpec, table: SweepTable): EChartsOption {
  const rows = usableRows(table, spec);
  const groups = byVacuum(rows);
  const series: SeriesOption[] = [];
  let yLabel = "";
  let logY = false;

  switch (spec.kind) {
    case "concurrence_sweep":
      yLabel = "concurrence / λ²";
      for (const [vacuum, rs] of groups) {
        series.push(lineSeries(vacuum, rs.map((r) => [r.axis, r.values.concurrence])));
      }
      break;
    case "mutual_info_sweep":
      yLabel = "mutual information / λ²";
      for (const [vacuum, rs] of groups) {
        series.push(lineSeries(vacuum, rs.map((r) => [r.axis, r.values.mutual_information])));
      }
      break;
    case "matrix_elements":
      yLabel = "matrix elements / λ²";
      for (const [vacuum, rs] of groups) {
        series.push(lineSeries(`${vacuum} L_AA`, rs.map((r) => [r.axis, r.values.L_AA_re])));
        series.push(
          lineSeries(
            `${vacuum} |M|`,
            rs.map((r) => [
              r.axis,
              Math.hypot(r.values.M_nonlocal_re, r.values.M_nonlocal_im),
            ]),
          ),
        );
      }
      break;
    case "estimator_overlay":
      yLabel = "concurrence, estimator / λ²";
      for (const [vacuum, rs] of groups) {
        series.push(
          lineSeries(`${vacuum} concurrence`, rs.map((r) => [r.axis, r.values.concurrence])),
        );
        series.push(
          lineSeries(`${vacuum} estimator`, rs.map((r) => [r.axis, r.values.estimator])),
        );
      }
      break;
    case "edr_curves":
      yLabel = "Pr(Ω) / Pr(-Ω)";
      logY = true;
      for (const [vacuum, rs] of groups) {
        const points = rs
          .filter((r) => r.values.edr > 0)
          .map((r) => [r.axis, r.values.edr] as [number, number]);
        if (points.length > 0) {
          series.push(lineSeries(vacuum, points));
        }
      }
      if (series.length === 0) {
        throw new SchemaError("empty selection: no positive ratios to draw on a log axis");
      }
      break;
  }

  // reference asymptotes as explicit dashed flat series: unlike markLine they
  // render on logarithmic axes, and the legend carries their labels
  const refs = spec.referenceLines ?? [];
  if (refs.length > 0) {
    const xs = rows.map((r) => r.axis);
    const xmin = Math.min(...xs);
    const xmax = Math.max(...xs);
    for (const ref of refs) {
      series.push({
        type: "line",
        name: ref.label,
        data: [
          [xmin, ref.value],
          [xmax, ref.value],
        ],
        showSymbol: false,
        lineStyle: { type: "dashed", width: 1 },
        animation: false,
      });
    }
  }

  // explicit bounds keep the log axis free of degenerate tick positions, and
  // the window floor sits a few decades under the meaningful curves so that
  // noise-level ratios hug the bottom edge instead of stretching the axis
  let yBounds = {};
  if (logY) {
    const ys = series.flatMap((entry) =>
      (entry.data as [number, number][]).map((point) => point[1]),
    );
    const top = Math.max(...ys);
    const floor = Math.max(Math.min(...ys), top * 1e-9);
    yBounds = {
      min: 10 ** Math.floor(Math.log10(floor)),
      max: 10 ** Math.ceil(Math.log10(top)),
    };
  }

  return {
    animation: false,
    title: { text: spec.title ?? KIND_TITLES[spec.kind], left: "center" },
    legend: { bottom: 0, data: series.map((entry) => entry.name as string) },
    grid: { left: 70, right: 30, top: 50, bottom: 60 },
    xAxis: {
      type: "value",
      name: spec.xLabel ?? DEFAULT_X[spec.kind],
      nameLocation: "middle",
      nameGap: 28,
    },
    yAxis: {
      type: logY ? "log" : "value",
      name: yLabel,
      nameLocation: "middle",
      nameGap: 52,
      ...yBounds,
    },
    series,
  };
}
