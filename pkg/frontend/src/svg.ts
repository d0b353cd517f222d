/**
 * Minimal deterministic SVG chart builder.
 *
 * No plotting library: element strings are assembled directly, so identical
 * inputs give byte-identical files.  One chart type covers all three figure
 * kinds: line series with optional vertical error bars, or stem series
 * (vertical line from the baseline plus a marker).
 */

export interface Point {
  x: number;
  y: number;
  /** low/high bounds of an error bar, in data units */
  lo?: number;
  hi?: number;
}

export interface Series {
  label: string;
  color: string;
  points: Point[];
  /** stems drop a vertical line to y=0 instead of connecting points */
  stems?: boolean;
}

export interface ChartSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
}

const WIDTH = 760;
const HEIGHT = 520;
const MARGIN = { left: 72, right: 24, top: 48, bottom: 58 };

export const PALETTE = ["#1b6ca8", "#c44536", "#3a7d44", "#7d3ac1", "#b8860b", "#2f4858"];

function fmt(value: number): string {
  // fixed-precision coordinates keep the output stable across platforms
  return value.toFixed(2);
}

export function fmtTick(value: number): string {
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 0.01 && abs < 10000) {
    return String(Number(value.toPrecision(4)));
  }
  return value.toExponential(2);
}

/** Evenly spaced round-valued ticks covering [min, max]. */
export function niceTicks(min: number, max: number, count = 5): number[] {
  if (min === max) {
    const pad = min === 0 ? 1 : Math.abs(min) * 0.5;
    min -= pad;
    max += pad;
  }
  const rawStep = (max - min) / count;
  const magnitude = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = magnitude;
  for (const mult of [1, 2, 2.5, 5, 10]) {
    if (magnitude * mult >= rawStep) {
      step = magnitude * mult;
      break;
    }
  }
  const ticks: number[] = [];
  let tick = Math.ceil(min / step) * step;
  while (tick <= max + step * 1e-9) {
    ticks.push(Math.abs(tick) < step * 1e-9 ? 0 : tick);
    tick += step;
  }
  return ticks;
}

interface Extent {
  min: number;
  max: number;
}

function dataExtent(values: number[], padFraction: number): Extent {
  let min = Math.min(...values);
  let max = Math.max(...values);
  if (min === max) {
    const pad = min === 0 ? 1 : Math.abs(min) * 0.25;
    return { min: min - pad, max: max + pad };
  }
  const pad = (max - min) * padFraction;
  return { min: min - pad, max: max + pad };
}

export function renderChart(spec: ChartSpec): string {
  if (spec.series.length === 0 || spec.series.every((s) => s.points.length === 0)) {
    throw new Error("nothing to plot: no series points");
  }
  const xs = spec.series.flatMap((s) => s.points.map((p) => p.x));
  const ys = spec.series.flatMap((s) =>
    s.points.flatMap((p) => [p.y, p.lo ?? p.y, p.hi ?? p.y, s.stems ? 0 : p.y]),
  );
  const xExtent = dataExtent(xs, 0.05);
  const yExtent = dataExtent(ys, 0.08);

  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const sx = (x: number) => MARGIN.left + ((x - xExtent.min) / (xExtent.max - xExtent.min)) * plotW;
  const sy = (y: number) => MARGIN.top + plotH - ((y - yExtent.min) / (yExtent.max - yExtent.min)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`);
  parts.push(
    `<text x="${WIDTH / 2}" y="26" text-anchor="middle" font-size="17" fill="#222">${spec.title}</text>`,
  );

  // gridlines and tick labels
  for (const tick of niceTicks(xExtent.min, xExtent.max)) {
    const x = fmt(sx(tick));
    parts.push(
      `<line x1="${x}" y1="${MARGIN.top}" x2="${x}" y2="${MARGIN.top + plotH}" stroke="#e4e4e4" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${x}" y="${MARGIN.top + plotH + 20}" text-anchor="middle" font-size="12" fill="#444">${fmtTick(tick)}</text>`,
    );
  }
  for (const tick of niceTicks(yExtent.min, yExtent.max)) {
    const y = fmt(sy(tick));
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y}" x2="${MARGIN.left + plotW}" y2="${y}" stroke="#e4e4e4" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${MARGIN.left - 8}" y="${y}" text-anchor="end" dominant-baseline="middle" font-size="12" fill="#444">${fmtTick(tick)}</text>`,
    );
  }

  // axes
  parts.push(
    `<line x1="${MARGIN.left}" y1="${MARGIN.top + plotH}" x2="${MARGIN.left + plotW}" y2="${MARGIN.top + plotH}" stroke="#222" stroke-width="1.5"/>`,
  );
  parts.push(
    `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${MARGIN.top + plotH}" stroke="#222" stroke-width="1.5"/>`,
  );
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 14}" text-anchor="middle" font-size="14" fill="#222">${spec.xLabel}</text>`,
  );
  parts.push(
    `<text x="20" y="${MARGIN.top + plotH / 2}" text-anchor="middle" font-size="14" fill="#222" transform="rotate(-90 20 ${MARGIN.top + plotH / 2})">${spec.yLabel}</text>`,
  );

  // series
  for (const series of spec.series) {
    const pieces: string[] = [`<g class="series" data-label="${series.label}">`];
    const sorted = [...series.points].sort((a, b) => a.x - b.x);
    if (series.stems) {
      const baseline = fmt(sy(Math.max(0, yExtent.min)));
      for (const p of sorted) {
        pieces.push(
          `<line class="stem" x1="${fmt(sx(p.x))}" y1="${baseline}" x2="${fmt(sx(p.x))}" y2="${fmt(sy(p.y))}" stroke="${series.color}" stroke-width="2"/>`,
        );
      }
    } else {
      const coords = sorted.map((p) => `${fmt(sx(p.x))},${fmt(sy(p.y))}`).join(" ");
      pieces.push(
        `<polyline points="${coords}" fill="none" stroke="${series.color}" stroke-width="2"/>`,
      );
    }
    for (const p of sorted) {
      if (p.lo !== undefined && p.hi !== undefined && p.hi > p.lo) {
        const x = fmt(sx(p.x));
        pieces.push(
          `<line class="errorbar" x1="${x}" y1="${fmt(sy(p.lo))}" x2="${x}" y2="${fmt(sy(p.hi))}" stroke="${series.color}" stroke-width="1.2"/>`,
        );
        for (const bound of [p.lo, p.hi]) {
          pieces.push(
            `<line x1="${fmt(sx(p.x) - 3.5)}" y1="${fmt(sy(bound))}" x2="${fmt(sx(p.x) + 3.5)}" y2="${fmt(sy(bound))}" stroke="${series.color}" stroke-width="1.2"/>`,
          );
        }
      }
      pieces.push(
        `<circle cx="${fmt(sx(p.x))}" cy="${fmt(sy(p.y))}" r="3.2" fill="${series.color}"/>`,
      );
    }
    pieces.push("</g>");
    parts.push(pieces.join(""));
  }

  // legend, top right of the plot area
  const legendX = MARGIN.left + plotW - 150;
  let legendY = MARGIN.top + 10;
  parts.push(
    `<rect x="${legendX - 10}" y="${legendY - 6}" width="158" height="${spec.series.length * 20 + 10}" fill="#ffffff" stroke="#cccccc"/>`,
  );
  for (const series of spec.series) {
    parts.push(
      `<line x1="${legendX}" y1="${legendY + 6}" x2="${legendX + 24}" y2="${legendY + 6}" stroke="${series.color}" stroke-width="2.5"/>`,
    );
    parts.push(
      `<text x="${legendX + 32}" y="${legendY + 10}" font-size="13" fill="#222">${series.label}</text>`,
    );
    legendY += 20;
  }

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
