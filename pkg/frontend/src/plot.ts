#!/usr/bin/env node
/**
 * plot --spec <figure-spec.json> --out <figure.svg> [--allow-flagged]
 *
 * Reads a sweep CSV named by the spec, renders an SVG server-side, writes it
 * to --out.  Exit codes: 0 ok, 2 spec/schema error.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { dirname, isAbsolute, join } from "node:path";
import * as echarts from "echarts";
import { parseSweepCsv, SchemaError } from "./csv";
import { buildFigure, validateFigureSpec } from "./figures";

export function renderSpecFile(specPath: string, allowFlagged = false): string {
  const spec = validateFigureSpec(JSON.parse(readFileSync(specPath, "utf8")));
  if (allowFlagged) {
    spec.allowFlagged = true;
  }
  const csvPath = isAbsolute(spec.input) ? spec.input : join(dirname(specPath), spec.input);
  const table = parseSweepCsv(readFileSync(csvPath, "utf8"));
  const option = buildFigure(spec, table);
  const chart = echarts.init(null, null, {
    renderer: "svg",
    ssr: true,
    width: spec.width ?? 840,
    height: spec.height ?? 560,
  });
  chart.setOption(option);
  const svg = chart.renderToSVGString();
  chart.dispose();
  return normalizeSvg(svg);
}

/** Renumber the process-global zrender id counters so identical input gives
 * byte-identical output even within one process, and drop the non-finite
 * grid-line paths the log axis emits in SSR mode (unrenderable no-ops). */
export function normalizeSvg(svg: string): string {
  let out = svg.replace(/zr\d+-/g, "zr-");
  out = out.replace(/<path [^>]*d="[^"]*(?:Infinity|NaN)[^"]*"[^>]*><\/path>\n?/g, "");
  out = out.replace(/<text [^>]*translate\([^)]*(?:Infinity|NaN)[^)]*\)[^>]*>[^<]*<\/text>\n?/g, "");
  const seen = new Map<string, string>();
  out = out.replace(/zr-cls-(\d+)/g, (token) => {
    let mapped = seen.get(token);
    if (!mapped) {
      mapped = `zr-cls-${seen.size}`;
      seen.set(token, mapped);
    }
    return mapped;
  });
  return out;
}

function parseArgs(argv: string[]): { spec: string; out: string; allowFlagged: boolean } {
  const args = argv[0] === "plot" ? argv.slice(1) : argv;
  let spec = "";
  let out = "";
  let allowFlagged = false;
  for (let i = 0; i < args.length; i += 1) {
    if (args[i] === "--spec") {
      spec = args[++i] ?? "";
    } else if (args[i] === "--out") {
      out = args[++i] ?? "";
    } else if (args[i] === "--allow-flagged") {
      allowFlagged = true;
    } else {
      throw new SchemaError(`unknown argument '${args[i]}'`);
    }
  }
  if (!spec || !out) {
    throw new SchemaError("usage: plot --spec <figure.json> --out <figure.svg> [--allow-flagged]");
  }
  return { spec, out, allowFlagged };
}

export function main(argv: string[]): number {
  try {
    const { spec, out, allowFlagged } = parseArgs(argv);
    const svg = renderSpecFile(spec, allowFlagged);
    writeFileSync(out, svg);
    console.log(`wrote ${out}`);
    return 0;
  } catch (err) {
    console.error(`plot error: ${(err as Error).message}`);
    return 2;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
