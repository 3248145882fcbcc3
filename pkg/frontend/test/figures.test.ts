import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { parseSweepCsv, SchemaError } from "../src/csv";
import { buildFigure, FigureSpec, validateFigureSpec } from "../src/figures";

const FIXTURES = join(__dirname, "fixtures");

function fixtureTable(name: string) {
  return parseSweepCsv(readFileSync(join(FIXTURES, name), "utf8"));
}

describe("validateFigureSpec", () => {
  it("accepts a well-formed spec", () => {
    const spec = validateFigureSpec({ input: "a.csv", kind: "concurrence_sweep" });
    expect(spec.kind).toBe("concurrence_sweep");
  });

  it("rejects missing input, bad kinds, and malformed reference lines", () => {
    expect(() => validateFigureSpec({ kind: "concurrence_sweep" })).toThrow(SchemaError);
    expect(() => validateFigureSpec({ input: "a.csv", kind: "pie" })).toThrow(/kind/);
    expect(() =>
      validateFigureSpec({ input: "a.csv", kind: "edr_curves", referenceLines: [{ label: 1 }] }),
    ).toThrow(/referenceLines/);
  });
});

describe("buildFigure", () => {
  it("builds one series per vacuum for a concurrence sweep", () => {
    const table = fixtureTable("concurrence_sweep.csv");
    const option = buildFigure({ input: "", kind: "concurrence_sweep" }, table) as {
      series: { name: string }[];
    };
    expect(option.series.map((s) => s.name)).toEqual(["boulware", "unruh", "hhi", "vaidya"]);
  });

  it("splits matrix elements into local and nonlocal series", () => {
    const table = fixtureTable("concurrence_sweep.csv");
    const option = buildFigure({ input: "", kind: "matrix_elements" }, table) as {
      series: { name: string }[];
    };
    expect(option.series).toHaveLength(8);
    expect(option.series.map((s) => s.name)).toContain("vaidya |M|");
  });

  it("adds dashed reference series on EDR figures", () => {
    const table = fixtureTable("edr_curves.csv");
    const spec: FigureSpec = {
      input: "",
      kind: "edr_curves",
      referenceLines: [{ label: "thermal asymptote", value: 5.12e-4 }],
    };
    const option = buildFigure(spec, table) as {
      series: { name: string; data: [number, number][] }[];
      yAxis: { type: string };
    };
    expect(option.yAxis.type).toBe("log");
    const ref = option.series.find((s) => s.name === "thermal asymptote");
    expect(ref).toBeDefined();
    expect(ref?.data[0][1]).toBeCloseTo(5.12e-4);
  });

  it("requires the columns its kind consumes", () => {
    const table = parseSweepCsv("axis,vacuum,status,concurrence\n1,unruh,ok,0.5");
    expect(() => buildFigure({ input: "", kind: "edr_curves" }, table))
      .toThrow(/needs column 'edr'/);
  });

  it("fails loudly on flagged rows unless allowed", () => {
    const text = "axis,vacuum,status,concurrence\n1,unruh,flagged,0.5\n2,unruh,ok,0.6";
    const table = parseSweepCsv(text);
    expect(() => buildFigure({ input: "", kind: "concurrence_sweep" }, table))
      .toThrow(/allow-flagged/);
    const option = buildFigure(
      { input: "", kind: "concurrence_sweep", allowFlagged: true },
      table,
    ) as { series: { data: unknown[] }[] };
    expect(option.series[0].data).toHaveLength(2);
  });

  it("drops non-positive ratios on the log axis and rejects empty selections", () => {
    const text = "axis,vacuum,status,edr\n1,boulware,ok,0\n2,boulware,ok,-1";
    const table = parseSweepCsv(text);
    expect(() => buildFigure({ input: "", kind: "edr_curves" }, table))
      .toThrow(/empty selection/);
  });
});
