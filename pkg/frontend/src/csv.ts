import { readFileSync } from "fs";
import Papa from "papaparse";
import { MissingColumn } from "./errors";

export const REQUIRED_COLUMNS = ["v", "r", "dvH", "p", "rho", "jr"] as const;

export interface FigureRow {
  v: number;
  r: number;
  rRaw: string; // the exact grid string, used for radius selection
  dvH: number;
  p: number;
  rho: number;
  jr: number;
}

/** Parse the figure-data CSV (header v,r,dvH,p,rho,jr) into typed rows. */
export function parseFigureCsv(text: string): FigureRow[] {
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new Error(`CSV parse error at row ${first.row}: ${first.message}`);
  }
  const fields = parsed.meta.fields ?? [];
  for (const col of REQUIRED_COLUMNS) {
    if (!fields.includes(col)) {
      throw new MissingColumn(col, fields);
    }
  }
  return parsed.data.map((raw, i) => {
    const row: FigureRow = {
      v: Number(raw.v),
      r: Number(raw.r),
      rRaw: raw.r,
      dvH: Number(raw.dvH),
      p: Number(raw.p),
      rho: Number(raw.rho),
      jr: Number(raw.jr),
    };
    for (const col of REQUIRED_COLUMNS) {
      const value = row[col as keyof FigureRow];
      if (typeof value === "number" && !Number.isFinite(value)) {
        throw new Error(`non-finite ${col} in CSV data row ${i + 1}: ${raw[col]}`);
      }
    }
    return row;
  });
}

export function loadFigureCsv(path: string): FigureRow[] {
  return parseFigureCsv(readFileSync(path, "utf-8"));
}
