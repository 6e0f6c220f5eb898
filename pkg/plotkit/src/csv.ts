/**
 * Parsing for the opsplit benchmark CSV.
 *
 * Expected schema (one header line, then one row per grid cell):
 *
 *   experiment,scheme,root_set,tau,sweeps,error_l2,error_inf,wall_ms,commutator_norm,oracle
 */

export interface ReportRow {
  experiment: string;
  scheme: string;
  rootSet: string;
  tau: number;
  sweeps: number;
  errorL2: number;
  errorInf: number;
  wallMs: number;
  commutatorNorm: number;
  oracle: string;
}

export const CSV_HEADER =
  "experiment,scheme,root_set,tau,sweeps,error_l2,error_inf,wall_ms,commutator_norm,oracle";

export const KNOWN_SCHEMES = new Set([
  "oneside-a",
  "oneside-b",
  "twoside",
  "twoside-fused",
]);

export class CsvParseError extends Error {
  constructor(line: number, detail: string) {
    super(`line ${line}: ${detail}`);
    this.name = "CsvParseError";
  }
}

export class EmptyReportError extends Error {
  constructor(path: string) {
    super(`${path}: report has a header but no data rows; nothing to plot`);
    this.name = "EmptyReportError";
  }
}

/** `inf` rows mark diverged cells; they parse to Infinity and plots skip them. */
function parseNumber(raw: string, line: number, field: string): number {
  if (raw === "inf") return Infinity;
  const value = Number(raw);
  if (raw === "" || Number.isNaN(value)) {
    throw new CsvParseError(line, `field ${field} is not a number: "${raw}"`);
  }
  return value;
}

export function parseReport(text: string, path = "<csv>"): ReportRow[] {
  const lines = text.split(/\r?\n/).filter((l, i, all) => !(l === "" && i === all.length - 1));
  if (lines.length === 0 || lines[0] !== CSV_HEADER) {
    throw new CsvParseError(1, `expected header "${CSV_HEADER}"`);
  }
  if (lines.length === 1) {
    throw new EmptyReportError(path);
  }
  const rows: ReportRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const line = lines[i]!;
    if (line === "") {
      throw new CsvParseError(i + 1, "blank line inside the report");
    }
    const parts = line.split(",");
    if (parts.length !== 10) {
      throw new CsvParseError(i + 1, `expected 10 fields, got ${parts.length}`);
    }
    const scheme = parts[1]!;
    if (!KNOWN_SCHEMES.has(scheme)) {
      throw new CsvParseError(i + 1, `unknown scheme "${scheme}"`);
    }
    rows.push({
      experiment: parts[0]!,
      scheme,
      rootSet: parts[2]!,
      tau: parseNumber(parts[3]!, i + 1, "tau"),
      sweeps: Math.trunc(parseNumber(parts[4]!, i + 1, "sweeps")),
      errorL2: parseNumber(parts[5]!, i + 1, "error_l2"),
      errorInf: parseNumber(parts[6]!, i + 1, "error_inf"),
      wallMs: parseNumber(parts[7]!, i + 1, "wall_ms"),
      commutatorNorm: parseNumber(parts[8]!, i + 1, "commutator_norm"),
      oracle: parts[9]!,
    });
  }
  return rows;
}
