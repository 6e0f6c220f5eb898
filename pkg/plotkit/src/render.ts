/**
 * Figure rendering: one error chart and one timing chart per scheme, plus a
 * plain-text summary of the fitted convergence slopes.
 *
 * Error charts plot error_l2 against tau on log-log axes, one curve per
 * sweep count, with the least-squares slope of each curve in the legend.
 * Timing charts plot wall_ms against the sweep count, one curve per tau.
 * Rendering is a pure function of the CSV: identical input bytes give
 * identical figures and summary.
 */

import { mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { EmptyReportError, parseReport, type ReportRow } from "./csv.js";
import { fitOrder } from "./slope.js";
import { renderChart, type Series } from "./svg.js";

export type FigureKind = "error" | "time";

export interface PlotSpec {
  input: string;
  outdir: string;
  kinds: FigureKind[];
}

export interface RenderResult {
  files: string[];
  summaryPath: string;
  summaryText: string;
}

function uniqueSorted(values: number[]): number[] {
  return [...new Set(values)].sort((a, b) => a - b);
}

function bySchemes(rows: ReportRow[]): Map<string, ReportRow[]> {
  const out = new Map<string, ReportRow[]>();
  for (const row of rows) {
    const list = out.get(row.scheme) ?? [];
    list.push(row);
    out.set(row.scheme, list);
  }
  return new Map([...out.entries()].sort(([a], [b]) => (a < b ? -1 : 1)));
}

function errorFigure(scheme: string, rows: ReportRow[], summary: string[]): string {
  const sweeps = uniqueSorted(rows.map((r) => r.sweeps));
  const series: Series[] = [];
  for (const m of sweeps) {
    const cells = rows
      .filter((r) => r.sweeps === m)
      .sort((a, b) => a.tau - b.tau);
    const fit = fitOrder(cells.map((c) => c.tau), cells.map((c) => c.errorL2));
    const slopeText = fit ? `slope ${fit.slope.toFixed(2)}` : "slope n/a";
    series.push({
      label: `sweeps ${m} (${slopeText})`,
      points: cells.map((c) => ({ x: c.tau, y: c.errorL2 })),
    });
    summary.push(
      fit
        ? `${rows[0]!.experiment} ${scheme} sweeps=${m}: slope=${fit.slope.toFixed(4)} (${fit.points} points)`
        : `${rows[0]!.experiment} ${scheme} sweeps=${m}: slope=n/a (fewer than 2 usable points)`,
    );
  }
  return renderChart(series, {
    title: `${rows[0]!.experiment}: error vs step size, ${scheme}`,
    xLabel: "step size tau",
    yLabel: "error (L2, t = horizon)",
    logX: true,
    logY: true,
  });
}

function timeFigure(scheme: string, rows: ReportRow[]): string {
  const taus = uniqueSorted(rows.map((r) => r.tau));
  const series: Series[] = taus.map((tau) => ({
    label: `tau ${tau}`,
    points: rows
      .filter((r) => r.tau === tau)
      .sort((a, b) => a.sweeps - b.sweeps)
      .map((r) => ({ x: r.sweeps, y: r.wallMs })),
  }));
  return renderChart(series, {
    title: `${rows[0]!.experiment}: wall time vs sweeps, ${scheme}`,
    xLabel: "sweeps",
    yLabel: "wall time (ms)",
    logX: false,
    logY: true,
  });
}

export function render(spec: PlotSpec): RenderResult {
  const text = readFileSync(spec.input, "utf-8");
  const rows = parseReport(text, spec.input);
  if (rows.length === 0) {
    throw new EmptyReportError(spec.input);
  }
  mkdirSync(spec.outdir, { recursive: true });

  const files: string[] = [];
  const summary: string[] = [];
  for (const [scheme, schemeRows] of bySchemes(rows)) {
    if (spec.kinds.includes("error")) {
      const path = join(spec.outdir, `error_${scheme}.svg`);
      writeFileSync(path, errorFigure(scheme, schemeRows, summary));
      files.push(path);
    }
    if (spec.kinds.includes("time")) {
      const path = join(spec.outdir, `time_${scheme}.svg`);
      writeFileSync(path, timeFigure(scheme, schemeRows));
      files.push(path);
    }
  }

  const summaryText = summary.join("\n") + (summary.length > 0 ? "\n" : "");
  const summaryPath = join(spec.outdir, "slopes.txt");
  writeFileSync(summaryPath, summaryText);
  return { files, summaryPath, summaryText };
}
