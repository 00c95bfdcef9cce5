import { FigureRow } from "./csv";
import { EmptySelection } from "./errors";

export interface Series {
  rLabel: string;
  v: number[];
  y: number[];
}

export type Quantity = "p" | "rho" | "jr";

/** Distinct radius grid strings, in increasing numeric order. */
export function radiusLabels(rows: FigureRow[]): string[] {
  const seen = new Map<string, number>();
  for (const row of rows) {
    if (!seen.has(row.rRaw)) seen.set(row.rRaw, row.r);
  }
  return [...seen.entries()].sort((a, b) => a[1] - b[1]).map(([label]) => label);
}

/**
 * One curve per requested radius.  Radii select rows by exact string match
 * of the grid value (e.g. "1", not "1.0", if the CSV was written that way).
 */
export function seriesForRadii(rows: FigureRow[], quantity: Quantity,
                               radii: string[]): Series[] {
  const available = radiusLabels(rows);
  const out: Series[] = [];
  for (const label of radii) {
    const selected = rows.filter((row) => row.rRaw === label);
    if (selected.length === 0) continue;
    selected.sort((a, b) => a.v - b.v);
    out.push({
      rLabel: label,
      v: selected.map((row) => row.v),
      y: selected.map((row) => row[quantity]),
    });
  }
  if (out.length === 0) {
    throw new EmptySelection(radii, available);
  }
  return out;
}

/** Dense (v, r) grid of one quantity for the heatmap panel. */
export interface GridData {
  vValues: number[];
  rValues: number[];
  cells: number[][]; // cells[i][j] = quantity at (rValues[i], vValues[j])
}

export function gridForQuantity(rows: FigureRow[], quantity: Quantity): GridData {
  const vSet = [...new Set(rows.map((row) => row.v))].sort((a, b) => a - b);
  const rLabels = radiusLabels(rows);
  const vIndex = new Map(vSet.map((v, i) => [v, i]));
  const cells = rLabels.map(() => new Array<number>(vSet.length).fill(NaN));
  rows.forEach((row) => {
    const i = rLabels.indexOf(row.rRaw);
    const j = vIndex.get(row.v)!;
    cells[i][j] = row[quantity];
  });
  return {
    vValues: vSet,
    rValues: rLabels.map((label) => Number(label)),
    cells,
  };
}

// -- shape probes over the plotted arrays ------------------------------------

export interface ProbeReport {
  name: string;
  passed: boolean;
  detail: string;
}

/** Pressure: nonnegative, peaks in the central region, negligible at the ends. */
export function probePressure(series: Series): ProbeReport[] {
  const peakIdx = series.y.reduce((best, y, i) => (y > series.y[best] ? i : best), 0);
  const peakV = series.v[peakIdx];
  const peak = series.y[peakIdx];
  const ends = Math.max(Math.abs(series.y[0]), Math.abs(series.y[series.y.length - 1]));
  const span = Math.max(Math.abs(series.v[0]), Math.abs(series.v[series.v.length - 1]));
  const rightMonotone = series.y
    .slice(peakIdx)
    .every((y, i, arr) => i === 0 || y <= arr[i - 1] + 1e-12);
  return [
    {
      name: `p nonnegative (r=${series.rLabel})`,
      passed: series.y.every((y) => y >= -1e-12),
      detail: `min p = ${Math.min(...series.y)}`,
    },
    {
      name: `p peaks centrally (r=${series.rLabel})`,
      passed: Math.abs(peakV) <= span / 2,
      detail: `peak ${peak.toPrecision(4)} at v = ${peakV}`,
    },
    {
      name: `p negligible at the window ends (r=${series.rLabel})`,
      passed: ends <= 0.05 * peak,
      detail: `end values ${ends.toExponential(2)} vs peak ${peak.toPrecision(4)}`,
    },
    {
      name: `p monotone decay beyond the peak (r=${series.rLabel})`,
      passed: rightMonotone,
      detail: `checked ${series.y.length - peakIdx} samples`,
    },
  ];
}

/** Radial flux: vanishes at v = 0, carries the sign of v, decays outward. */
export function probeFlux(series: Series): ProbeReport[] {
  let zeroOk = true;
  let zeroDetail = "no v = 0 sample";
  const signOk = series.v.every((v, i) => {
    if (Math.abs(v) < 1e-12) {
      zeroOk = Math.abs(series.y[i]) <= 1e-12;
      zeroDetail = `j^r(0) = ${series.y[i]}`;
      return true;
    }
    return Math.sign(series.y[i]) === Math.sign(v);
  });
  const peak = Math.max(...series.y.map(Math.abs));
  const ends = Math.max(Math.abs(series.y[0]), Math.abs(series.y[series.y.length - 1]));
  return [
    {
      name: `j^r vanishes at v = 0 (r=${series.rLabel})`,
      passed: zeroOk,
      detail: zeroDetail,
    },
    {
      name: `j^r carries the sign of v (r=${series.rLabel})`,
      passed: signOk,
      detail: "inflow before v = 0, outflow after",
    },
    {
      name: `j^r decays towards the window ends (r=${series.rLabel})`,
      passed: ends <= 0.5 * peak,
      detail: `ends ${ends.toExponential(2)} vs peak ${peak.toExponential(2)}`,
    },
  ];
}

/** Density: nonnegative and net increase across the active region. */
export function probeDensity(series: Series): ProbeReport[] {
  const first = series.y[0];
  const last = series.y[series.y.length - 1];
  return [
    {
      name: `rho nonnegative (r=${series.rLabel})`,
      passed: series.y.every((y) => y >= -1e-12),
      detail: `min rho = ${Math.min(...series.y)}`,
    },
    {
      name: `rho increases across the shell history (r=${series.rLabel})`,
      passed: last > first,
      detail: `rho(start) = ${first.toPrecision(4)}, rho(end) = ${last.toPrecision(4)}`,
    },
  ];
}

export function runAllProbes(byQuantity: Record<Quantity, Series[]>): ProbeReport[] {
  const reports: ProbeReport[] = [];
  byQuantity.p.forEach((s) => reports.push(...probePressure(s)));
  byQuantity.jr.forEach((s) => reports.push(...probeFlux(s)));
  byQuantity.rho.forEach((s) => reports.push(...probeDensity(s)));
  return reports;
}
