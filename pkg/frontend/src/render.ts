import { mkdirSync, writeFileSync } from "fs";
import { join } from "path";
import { loadFigureCsv } from "./csv";
import { gridForQuantity, Quantity, runAllProbes, seriesForRadii,
         Series, ProbeReport } from "./panels";
import { heatmapSvg, linePlotSvg } from "./svg";

export interface FigureSpec {
  csvPath: string;
  radii: string[]; // exact grid strings of the fixed radii
  outDir: string;
  titles?: Partial<Record<Quantity, string>>;
}

export interface RenderResult {
  files: string[];
  probes: ProbeReport[];
  series: Record<Quantity, Series[]>;
}

const DEFAULT_TITLES: Record<Quantity, string> = {
  p: "Shell pressure p(v, r)",
  rho: "Shell energy density rho(v, r)",
  jr: "Radial energy flux j^r(v, r)",
};

const FILE_NAMES: Record<Quantity, string> = {
  p: "pressure_vs_v.svg",
  rho: "density_vs_v.svg",
  jr: "flux_vs_v.svg",
};

const Y_LABELS: Record<Quantity, string> = { p: "p", rho: "rho", jr: "j^r" };

/**
 * Render the four panels: one line plot per quantity at the fixed radii,
 * plus a combined heatmap over the full (v, r) grid.  Rendering is
 * read-only over the CSV; nothing is recomputed.
 */
export function render(spec: FigureSpec): RenderResult {
  const rows = loadFigureCsv(spec.csvPath);
  const quantities: Quantity[] = ["p", "rho", "jr"];
  const series = {} as Record<Quantity, Series[]>;
  mkdirSync(spec.outDir, { recursive: true });
  const files: string[] = [];
  for (const q of quantities) {
    series[q] = seriesForRadii(rows, q, spec.radii);
    const title = spec.titles?.[q] ?? DEFAULT_TITLES[q];
    const svg = linePlotSvg(series[q], Y_LABELS[q], title);
    const path = join(spec.outDir, FILE_NAMES[q]);
    writeFileSync(path, svg + "\n");
    files.push(path);
  }
  const heat = heatmapSvg(quantities.map((q) => ({
    title: DEFAULT_TITLES[q],
    grid: gridForQuantity(rows, q),
  })));
  const heatPath = join(spec.outDir, "profiles_heatmap.svg");
  writeFileSync(heatPath, heat + "\n");
  files.push(heatPath);
  return { files, probes: runAllProbes(series), series };
}
