import { GridData, Series } from "./panels";

const WIDTH = 640;
const HEIGHT = 420;
const MARGIN = { top: 40, right: 120, bottom: 48, left: 64 };
const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

interface Scale {
  (x: number): number;
  domain: [number, number];
}

function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const fn = ((x: number) => r0 + ((x - d0) / span) * (r1 - r0)) as Scale;
  fn.domain = domain;
  return fn;
}

function niceTicks(lo: number, hi: number, count = 6): number[] {
  const span = hi - lo || 1;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const err = span / count / step;
  const mult = err >= 7.5 ? 10 : err >= 3.5 ? 5 : err >= 1.5 ? 2 : 1;
  const s = step * mult;
  const first = Math.ceil(lo / s) * s;
  const ticks: number[] = [];
  for (let t = first; t <= hi + 1e-12; t += s) ticks.push(Number(t.toPrecision(12)));
  return ticks;
}

function fmt(x: number): string {
  if (x === 0) return "0";
  const a = Math.abs(x);
  if (a >= 0.01 && a < 10000) return Number(x.toPrecision(4)).toString();
  return x.toExponential(1);
}

function axes(xs: Scale, ys: Scale, xLabel: string, yLabel: string, title: string): string {
  const parts: string[] = [];
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;
  parts.push(`<text x="${(x0 + x1) / 2}" y="22" text-anchor="middle" class="title">${title}</text>`);
  parts.push(`<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" class="axis"/>`);
  parts.push(`<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" class="axis"/>`);
  for (const t of niceTicks(xs.domain[0], xs.domain[1])) {
    const px = xs(t);
    parts.push(`<line x1="${px}" y1="${y0}" x2="${px}" y2="${y0 + 5}" class="axis"/>`);
    parts.push(`<line x1="${px}" y1="${y0}" x2="${px}" y2="${y1}" class="grid"/>`);
    parts.push(`<text x="${px}" y="${y0 + 20}" text-anchor="middle" class="tick">${fmt(t)}</text>`);
  }
  for (const t of niceTicks(ys.domain[0], ys.domain[1])) {
    const py = ys(t);
    parts.push(`<line x1="${x0 - 5}" y1="${py}" x2="${x0}" y2="${py}" class="axis"/>`);
    parts.push(`<line x1="${x0}" y1="${py}" x2="${x1}" y2="${py}" class="grid"/>`);
    parts.push(`<text x="${x0 - 8}" y="${py + 4}" text-anchor="end" class="tick">${fmt(t)}</text>`);
  }
  parts.push(`<text x="${(x0 + x1) / 2}" y="${HEIGHT - 10}" text-anchor="middle" class="label">${xLabel}</text>`);
  parts.push(`<text x="18" y="${(y0 + y1) / 2}" text-anchor="middle" class="label" transform="rotate(-90 18 ${(y0 + y1) / 2})">${yLabel}</text>`);
  return parts.join("\n");
}

const STYLE = `<style>
  .title { font: bold 15px sans-serif; }
  .label { font: 13px sans-serif; }
  .tick { font: 11px sans-serif; fill: #333; }
  .legend { font: 12px sans-serif; }
  .axis { stroke: #000; stroke-width: 1; }
  .grid { stroke: #ddd; stroke-width: 0.5; }
  .curve { fill: none; stroke-width: 1.8; }
</style>`;

/** Line plot of one quantity against v, one curve per radius. */
export function linePlotSvg(series: Series[], yLabel: string, title: string): string {
  const allV = series.flatMap((s) => s.v);
  const allY = series.flatMap((s) => s.y);
  const yLo = Math.min(0, ...allY);
  const yHi = Math.max(0, ...allY);
  const pad = 0.05 * (yHi - yLo || 1);
  const xs = linearScale([Math.min(...allV), Math.max(...allV)],
                         [MARGIN.left, WIDTH - MARGIN.right]);
  const ys = linearScale([yLo - pad, yHi + pad],
                         [HEIGHT - MARGIN.bottom, MARGIN.top]);
  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
    STYLE,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
    axes(xs, ys, "v", yLabel, title),
  ];
  series.forEach((s, k) => {
    const colour = PALETTE[k % PALETTE.length];
    const path = s.v.map((v, i) =>
      `${i === 0 ? "M" : "L"}${xs(v).toFixed(2)},${ys(s.y[i]).toFixed(2)}`).join("");
    parts.push(`<path d="${path}" class="curve" stroke="${colour}"/>`);
    const ly = MARGIN.top + 16 * k;
    const lx = WIDTH - MARGIN.right + 10;
    parts.push(`<line x1="${lx}" y1="${ly}" x2="${lx + 18}" y2="${ly}" stroke="${colour}" stroke-width="2"/>`);
    parts.push(`<text x="${lx + 24}" y="${ly + 4}" class="legend">r = ${s.rLabel}</text>`);
  });
  parts.push("</svg>");
  return parts.join("\n");
}

function colourFor(t: number): string {
  // simple blue -> white -> red diverging map on [0, 1]
  const clamp = Math.max(0, Math.min(1, t));
  const mix = (a: number, b: number, s: number) => Math.round(a + (b - a) * s);
  if (clamp < 0.5) {
    const s = clamp * 2;
    return `rgb(${mix(33, 255, s)},${mix(102, 255, s)},${mix(172, 255, s)})`;
  }
  const s = (clamp - 0.5) * 2;
  return `rgb(${mix(255, 178, s)},${mix(255, 24, s)},${mix(255, 43, s)})`;
}

/** One heat strip per quantity over the (v, r) grid, combined in one SVG. */
export function heatmapSvg(grids: { title: string; grid: GridData }[]): string {
  const stripH = 180;
  const width = 720;
  const margin = { top: 36, left: 64, right: 96, bottom: 40 };
  const height = margin.top + grids.length * (stripH + 42) + margin.bottom;
  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
    STYLE,
    `<rect width="${width}" height="${height}" fill="white"/>`,
  ];
  grids.forEach(({ title, grid }, gi) => {
    const top = margin.top + gi * (stripH + 42);
    const xs = linearScale([grid.vValues[0], grid.vValues[grid.vValues.length - 1]],
                           [margin.left, width - margin.right]);
    const rLo = grid.rValues[0];
    const rHi = grid.rValues[grid.rValues.length - 1];
    const ys = linearScale([rLo, rHi], [top + stripH, top]);
    let lo = Infinity;
    let hi = -Infinity;
    grid.cells.forEach((row) => row.forEach((c) => {
      if (Number.isFinite(c)) { lo = Math.min(lo, c); hi = Math.max(hi, c); }
    }));
    const span = hi - lo || 1;
    parts.push(`<text x="${margin.left}" y="${top - 8}" class="title">${title}  [${fmt(lo)}, ${fmt(hi)}]</text>`);
    for (let i = 0; i < grid.rValues.length; i++) {
      for (let j = 0; j < grid.vValues.length; j++) {
        const value = grid.cells[i][j];
        if (!Number.isFinite(value)) continue;
        const x = xs(grid.vValues[j]);
        const y = ys(grid.rValues[i]);
        const w = j + 1 < grid.vValues.length ? xs(grid.vValues[j + 1]) - x : 4;
        const h = i + 1 < grid.rValues.length ? y - ys(grid.rValues[i + 1]) : 4;
        parts.push(`<rect x="${x.toFixed(2)}" y="${(y - h).toFixed(2)}" width="${(w + 0.5).toFixed(2)}" height="${(h + 0.5).toFixed(2)}" fill="${colourFor((value - lo) / span)}"/>`);
      }
    }
    parts.push(`<text x="${(margin.left + width - margin.right) / 2}" y="${top + stripH + 28}" text-anchor="middle" class="label">v</text>`);
    parts.push(`<text x="24" y="${top + stripH / 2}" text-anchor="middle" class="label" transform="rotate(-90 24 ${top + stripH / 2})">r</text>`);
    [rLo, rHi].forEach((r) => {
      parts.push(`<text x="${margin.left - 8}" y="${ys(r) + 4}" text-anchor="end" class="tick">${fmt(r)}</text>`);
    });
    [grid.vValues[0], 0, grid.vValues[grid.vValues.length - 1]].forEach((v) => {
      parts.push(`<text x="${xs(v)}" y="${top + stripH + 14}" text-anchor="middle" class="tick">${fmt(v)}</text>`);
    });
  });
  parts.push("</svg>");
  return parts.join("\n");
}
