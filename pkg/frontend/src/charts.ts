/**
 * The three figure kinds, mapped onto the generic chart builder.
 *
 * Each consumes exactly one documented output format of the simulation CLI:
 *   threshold    scan CSV    -> failure rate vs flip probability, one series
 *                               per lattice size, Wilson CI bars
 *   bifurcation  scan CSV    -> order parameter vs temperature, one series
 *                               per encoding sign, +/-1.96 stderr bars
 *   spectrum     diag JSON   -> eigenvalue multiplicity stem plot
 */

import { parseCsv, Row, SchemaError } from "./csv.js";
import { PALETTE, renderChart, Series } from "./svg.js";

export const THRESHOLD_HEADER = [
  "dimension", "n", "p_x", "p_z", "trials", "seed",
  "count_gauge", "count_lx", "count_ly", "count_lz",
  "failure_rate", "ci_low", "ci_high",
];

export const BIFURCATION_HEADER = [
  "n", "lambda", "c_zy", "c_zz", "T", "encoded",
  "samples", "order_parameter", "stderr", "seed",
];

function distinct(values: number[]): number[] {
  return [...new Set(values)].sort((a, b) => a - b);
}

export function thresholdChart(csvText: string): string {
  const rows = parseCsv(csvText, THRESHOLD_HEADER);
  // the varying probability column is the x axis; Z-only scans vary p_z
  const xColumn = distinct(rows.map((r) => r.p_z)).length > 1 ? "p_z" : "p_x";
  const series: Series[] = distinct(rows.map((r) => r.n)).map((n, i) => ({
    label: `n = ${n}`,
    color: PALETTE[i % PALETTE.length],
    points: rows
      .filter((r) => r.n === n)
      .map((r) => ({ x: r[xColumn], y: r.failure_rate, lo: r.ci_low, hi: r.ci_high })),
  }));
  const dimension = rows[0].dimension;
  return renderChart({
    title: `Logical failure rate, ${dimension}D lattice codes`,
    xLabel: `single-site flip probability ${xColumn}`,
    yLabel: "failure rate (95% CI)",
    series,
  });
}

export function bifurcationChart(csvText: string): string {
  const rows = parseCsv(csvText, BIFURCATION_HEADER);
  const series: Series[] = distinct(rows.map((r) => r.encoded))
    .reverse() // +1 first
    .map((encoded, i) => ({
      label: `encoded ${encoded > 0 ? "+1" : "-1"}`,
      color: PALETTE[i % PALETTE.length],
      points: rows
        .filter((r) => r.encoded === encoded)
        .map((r) => ({
          x: r.T,
          y: r.order_parameter,
          lo: r.order_parameter - 1.96 * r.stderr,
          hi: r.order_parameter + 1.96 * r.stderr,
        })),
    }));
  const n = rows[0].n;
  return renderChart({
    title: `Syndrome-adjusted order parameter, n = ${n}`,
    xLabel: "temperature T",
    yLabel: "order parameter",
    series,
  });
}

interface SpectrumReport {
  n: number;
  dimension: number;
  eigenvalues: { value: number; multiplicity: number }[];
}

export function spectrumChart(jsonText: string): string {
  let payload: unknown;
  try {
    payload = JSON.parse(jsonText);
  } catch (err) {
    throw new SchemaError(`not valid JSON: ${(err as Error).message}`);
  }
  const report = payload as Partial<SpectrumReport>;
  for (const field of ["n", "dimension", "eigenvalues"] as const) {
    if (report[field] === undefined) {
      throw new SchemaError(`missing field: ${field}`);
    }
  }
  const eigenvalues = report.eigenvalues as SpectrumReport["eigenvalues"];
  if (!Array.isArray(eigenvalues) || eigenvalues.length === 0) {
    throw new SchemaError("eigenvalues must be a non-empty array");
  }
  for (const entry of eigenvalues) {
    if (typeof entry.value !== "number" || typeof entry.multiplicity !== "number") {
      throw new SchemaError("eigenvalue entries need numeric value and multiplicity");
    }
  }
  const series: Series[] = [
    {
      label: "multiplicity",
      color: PALETTE[0],
      stems: true,
      points: eigenvalues.map((e) => ({ x: e.value, y: e.multiplicity })),
    },
  ];
  return renderChart({
    title: `Spectrum multiplicities, ${report.dimension}D n = ${report.n}`,
    xLabel: "energy",
    yLabel: "multiplicity",
    series,
  });
}
