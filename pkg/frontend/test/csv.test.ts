import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { byVacuum, parseSweepCsv, SchemaError } from "../src/csv";

const FIXTURES = join(__dirname, "fixtures");

const MINI = [
  "axis,vacuum,status,concurrence,err_concurrence",
  "0.5,boulware,ok,0.01,1e-10",
  "0.5,unruh,ok,0.02,1e-10",
  "2,boulware,ok,0.05,1e-10",
  "2,unruh,ok,0.06,1e-10",
].join("\n");

describe("parseSweepCsv", () => {
  it("parses real solver output", () => {
    const table = parseSweepCsv(readFileSync(join(FIXTURES, "concurrence_sweep.csv"), "utf8"));
    expect(table.rows).toHaveLength(20);
    expect(table.valueColumns).toContain("concurrence");
    expect(table.valueColumns).toContain("M_nonlocal_re");
    expect(table.errColumns).toContain("err_L_AA");
    expect(table.rows[0].vacuum).toBe("boulware");
    expect(table.rows[0].axis).toBeCloseTo(0.1);
  });

  it("parses the minimal contract", () => {
    const table = parseSweepCsv(MINI);
    expect(table.valueColumns).toEqual(["concurrence"]);
    expect([...byVacuum(table.rows).keys()]).toEqual(["boulware", "unruh"]);
  });

  it("rejects an empty file", () => {
    expect(() => parseSweepCsv("")).toThrow(SchemaError);
  });

  it("rejects a header without data rows", () => {
    expect(() => parseSweepCsv("axis,vacuum,status,concurrence,err_concurrence"))
      .toThrow(/no data rows/);
  });

  it("rejects a foreign header", () => {
    expect(() => parseSweepCsv("x,y,z\n1,2,3")).toThrow(/axis,vacuum,status/);
  });

  it("rejects unknown columns", () => {
    expect(() => parseSweepCsv("axis,vacuum,status,banana\n1,unruh,ok,2"))
      .toThrow(/unknown value column 'banana'/);
    expect(() => parseSweepCsv("axis,vacuum,status,concurrence,err_banana\n1,unruh,ok,2,3"))
      .toThrow(/unknown error column/);
  });

  it("rejects ragged rows and non-numeric axis values", () => {
    expect(() => parseSweepCsv("axis,vacuum,status,concurrence\n1,unruh,ok"))
      .toThrow(/cells/);
    expect(() => parseSweepCsv("axis,vacuum,status,concurrence\nxyz,unruh,ok,1"))
      .toThrow(/not a number/);
  });
});
