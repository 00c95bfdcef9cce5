#!/usr/bin/env node
/**
 * figure_plots <csv> --r 0.5,1,2 --out-dir DIR
 *
 * Renders the line-plot panels and the combined heatmap from a figure-data
 * CSV, runs the shape probes on the plotted arrays, and exits nonzero if a
 * probe fails.
 */

import { render } from "./render";
import { EmptySelection, MissingColumn } from "./errors";

function usage(): never {
  process.stderr.write(
    "usage: figure_plots <csv> [--r 0.5,1,2] [--out-dir DIR]\n");
  process.exit(2);
}

export function main(argv: string[]): number {
  let csvPath: string | undefined;
  let radii = ["0.5", "1", "2"];
  let outDir = "figure-panels";
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--r") {
      const value = argv[++i];
      if (!value) usage();
      radii = value.split(",").map((s) => s.trim());
    } else if (arg.startsWith("--r=")) {
      radii = arg.slice(4).split(",").map((s) => s.trim());
    } else if (arg === "--out-dir") {
      outDir = argv[++i] ?? usage();
    } else if (arg.startsWith("--out-dir=")) {
      outDir = arg.slice(10);
    } else if (!arg.startsWith("--") && csvPath === undefined) {
      csvPath = arg;
    } else {
      usage();
    }
  }
  if (!csvPath) usage();

  const result = render({ csvPath, radii, outDir });
  for (const file of result.files) {
    process.stdout.write(`wrote ${file}\n`);
  }
  let failures = 0;
  for (const probe of result.probes) {
    const tag = probe.passed ? "ok  " : "FAIL";
    process.stdout.write(`${tag} ${probe.name}: ${probe.detail}\n`);
    if (!probe.passed) failures++;
  }
  process.stdout.write(
    `${result.probes.length - failures}/${result.probes.length} probes passed\n`);
  return failures === 0 ? 0 : 1;
}

if (require.main === module) {
  try {
    process.exit(main(process.argv.slice(2)));
  } catch (err) {
    if (err instanceof EmptySelection || err instanceof MissingColumn) {
      process.stderr.write(`error: ${err.message}\n`);
      process.exit(2);
    }
    throw err;
  }
}
