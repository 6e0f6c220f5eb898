/**
 * Minimal dependency-free SVG chart builder.
 *
 * Two chart kinds cover the report figures: log-log curves (error vs tau)
 * and lin-log curves (wall time vs sweeps). Output is deterministic for
 * identical input.
 */

export interface Series {
  label: string;
  points: Array<{ x: number; y: number }>;
}

export interface ChartOptions {
  title: string;
  xLabel: string;
  yLabel: string;
  logX: boolean;
  logY: boolean;
}

const W = 720;
const H = 480;
const MARGIN = { left: 80, right: 200, top: 48, bottom: 56 };
const COLORS = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
  "#8c564b", "#17becf", "#7f7f7f",
];

function fmt(v: number): string {
  return v.toPrecision(5).replace(/\.?0+$/, "").replace(/\.?0+e/, "e");
}

function tickLabel(v: number, log: boolean): string {
  if (!log) return fmt(v);
  const exp = Math.round(Math.log10(v));
  return `1e${exp}`;
}

function range(values: number[], log: boolean): [number, number] {
  const usable = values.filter((v) => Number.isFinite(v) && (!log || v > 0));
  if (usable.length === 0) return log ? [1e-16, 1] : [0, 1];
  let lo = Math.min(...usable);
  let hi = Math.max(...usable);
  if (log) {
    lo = Math.pow(10, Math.floor(Math.log10(lo)));
    hi = Math.pow(10, Math.ceil(Math.log10(hi)));
    if (lo === hi) hi = lo * 10;
  } else {
    if (lo === hi) {
      lo -= 0.5;
      hi += 0.5;
    }
    const pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
  return [lo, hi];
}

function ticks(lo: number, hi: number, log: boolean): number[] {
  if (log) {
    const e0 = Math.ceil(Math.log10(lo) - 1e-9);
    const e1 = Math.floor(Math.log10(hi) + 1e-9);
    const step = Math.max(1, Math.ceil((e1 - e0) / 8));
    const out: number[] = [];
    for (let e = e0; e <= e1; e += step) out.push(Math.pow(10, e));
    return out;
  }
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / 5)));
  const mult = span / step > 10 ? 2 : 1;
  const out: number[] = [];
  for (let v = Math.ceil(lo / (step * mult)) * step * mult; v <= hi + 1e-12; v += step * mult) {
    out.push(Number(v.toPrecision(12)));
  }
  return out;
}

export function renderChart(series: Series[], opts: ChartOptions): string {
  const xs = series.flatMap((s) => s.points.map((p) => p.x));
  const ys = series.flatMap((s) => s.points.map((p) => p.y));
  const [x0, x1] = range(xs, opts.logX);
  const [y0, y1] = range(ys, opts.logY);

  const sx = (v: number) => {
    const t = opts.logX
      ? (Math.log10(v) - Math.log10(x0)) / (Math.log10(x1) - Math.log10(x0))
      : (v - x0) / (x1 - x0);
    return MARGIN.left + t * (W - MARGIN.left - MARGIN.right);
  };
  const sy = (v: number) => {
    const t = opts.logY
      ? (Math.log10(v) - Math.log10(y0)) / (Math.log10(y1) - Math.log10(y0))
      : (v - y0) / (y1 - y0);
    return H - MARGIN.bottom - t * (H - MARGIN.top - MARGIN.bottom);
  };

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${W}" height="${H}" viewBox="0 0 ${W} ${H}">`,
    `<rect width="${W}" height="${H}" fill="white"/>`,
    `<text x="${(MARGIN.left + W - MARGIN.right) / 2}" y="24" text-anchor="middle" font-family="sans-serif" font-size="16">${opts.title}</text>`,
  );

  for (const tx of ticks(x0, x1, opts.logX)) {
    const px = sx(tx);
    parts.push(
      `<line x1="${px.toFixed(1)}" y1="${MARGIN.top}" x2="${px.toFixed(1)}" y2="${H - MARGIN.bottom}" stroke="#dddddd"/>`,
      `<text x="${px.toFixed(1)}" y="${H - MARGIN.bottom + 18}" text-anchor="middle" font-family="sans-serif" font-size="11">${tickLabel(tx, opts.logX)}</text>`,
    );
  }
  for (const ty of ticks(y0, y1, opts.logY)) {
    const py = sy(ty);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${py.toFixed(1)}" x2="${W - MARGIN.right}" y2="${py.toFixed(1)}" stroke="#dddddd"/>`,
      `<text x="${MARGIN.left - 6}" y="${(py + 4).toFixed(1)}" text-anchor="end" font-family="sans-serif" font-size="11">${tickLabel(ty, opts.logY)}</text>`,
    );
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${W - MARGIN.left - MARGIN.right}" height="${H - MARGIN.top - MARGIN.bottom}" fill="none" stroke="#444444"/>`,
    `<text x="${(MARGIN.left + W - MARGIN.right) / 2}" y="${H - 12}" text-anchor="middle" font-family="sans-serif" font-size="13">${opts.xLabel}</text>`,
    `<text transform="rotate(-90 20 ${H / 2})" x="20" y="${H / 2}" text-anchor="middle" font-family="sans-serif" font-size="13">${opts.yLabel}</text>`,
  );

  series.forEach((s, idx) => {
    const color = COLORS[idx % COLORS.length]!;
    const usable = s.points.filter(
      (p) => Number.isFinite(p.x) && Number.isFinite(p.y) && (!opts.logX || p.x > 0) && (!opts.logY || p.y > 0),
    );
    if (usable.length > 0) {
      const path = usable.map((p) => `${sx(p.x).toFixed(2)},${sy(p.y).toFixed(2)}`).join(" ");
      parts.push(`<polyline points="${path}" fill="none" stroke="${color}" stroke-width="1.5"/>`);
      for (const p of usable) {
        parts.push(`<circle cx="${sx(p.x).toFixed(2)}" cy="${sy(p.y).toFixed(2)}" r="3" fill="${color}"/>`);
      }
    }
    const ly = MARGIN.top + 16 + idx * 18;
    parts.push(
      `<line x1="${W - MARGIN.right + 10}" y1="${ly - 4}" x2="${W - MARGIN.right + 34}" y2="${ly - 4}" stroke="${color}" stroke-width="1.5"/>`,
      `<text x="${W - MARGIN.right + 40}" y="${ly}" font-family="sans-serif" font-size="11">${s.label}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
