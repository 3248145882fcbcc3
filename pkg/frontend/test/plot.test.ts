import { mkdtempSync, writeFileSync, existsSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { main, renderSpecFile } from "../src/plot";

const FIXTURES = join(__dirname, "fixtures");

describe("renderSpecFile", () => {
  it("renders the four-vacuum concurrence figure with sigma-labelled axes", () => {
    const svg = renderSpecFile(join(FIXTURES, "concurrence_fig.json"));
    expect(svg).toContain("<svg");
    for (const vacuum of ["boulware", "unruh", "hhi", "vaidya"]) {
      expect(svg).toContain(vacuum);
    }
    expect(svg).toContain("σ"); // axes in units of sigma
    expect(svg).toContain("Concurrence");
  });

  it("renders the EDR figure with both reference asymptotes", () => {
    const svg = renderSpecFile(join(FIXTURES, "edr_fig.json"));
    expect(svg).toContain("thermal asymptote 0.000512");
    expect(svg).toContain("one-sided flux 0.000256");
    expect(svg).toContain("stroke-dasharray");
  });

  it("is deterministic over identical input", () => {
    const first = renderSpecFile(join(FIXTURES, "edr_fig.json"));
    const second = renderSpecFile(join(FIXTURES, "edr_fig.json"));
    expect(second).toBe(first);
  });
});

describe("plot CLI", () => {
  it("writes an SVG and returns 0", () => {
    const dir = mkdtempSync(join(tmpdir(), "udwplot-"));
    const out = join(dir, "fig.svg");
    const code = main(["plot", "--spec", join(FIXTURES, "concurrence_fig.json"), "--out", out]);
    expect(code).toBe(0);
    expect(existsSync(out)).toBe(true);
    expect(readFileSync(out, "utf8")).toContain("<svg");
  });

  it("fails loudly on schema-mismatched input", () => {
    const dir = mkdtempSync(join(tmpdir(), "udwplot-"));
    writeFileSync(join(dir, "bad.csv"), "time,who,value\n1,unruh,3\n");
    writeFileSync(
      join(dir, "bad.json"),
      JSON.stringify({ input: "bad.csv", kind: "concurrence_sweep" }),
    );
    const out = join(dir, "fig.svg");
    expect(main(["--spec", join(dir, "bad.json"), "--out", out])).toBe(2);
    expect(existsSync(out)).toBe(false);
  });

  it("rejects empty CSV input explicitly", () => {
    const dir = mkdtempSync(join(tmpdir(), "udwplot-"));
    writeFileSync(join(dir, "empty.csv"), "axis,vacuum,status,concurrence,err_concurrence\n");
    writeFileSync(
      join(dir, "empty.json"),
      JSON.stringify({ input: "empty.csv", kind: "concurrence_sweep" }),
    );
    expect(main(["--spec", join(dir, "empty.json"), "--out", join(dir, "fig.svg")])).toBe(2);
  });

  it("rejects unknown arguments and missing paths", () => {
    expect(main(["--bogus"])).toBe(2);
    expect(main([])).toBe(2);
  });
});
