/**
 * plotkit CLI.
 *
 * Usage:
 *   node dist/src/cli.js render --input report.csv --outdir figs [--kind error,time]
 *
 * Exit codes: 0 rendered, 1 usage error, 2 bad or empty report.
 */

import { CsvParseError, EmptyReportError } from "./csv.js";
import { render, type FigureKind } from "./render.js";

function usage(): void {
  process.stderr.write(
    "usage: plotkit render --input <report.csv> --outdir <dir> [--kind error,time]\n",
  );
}

export function main(argv: string[]): number {
  if (argv[0] !== "render") {
    usage();
    return 1;
  }
  let input: string | undefined;
  let outdir: string | undefined;
  let kinds: FigureKind[] = ["error", "time"];
  for (let i = 1; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (value === undefined) {
      usage();
      return 1;
    }
    switch (flag) {
      case "--input":
        input = value;
        break;
      case "--outdir":
        outdir = value;
        break;
      case "--kind": {
        const parsed = value.split(",");
        if (!parsed.every((k): k is FigureKind => k === "error" || k === "time")) {
          usage();
          return 1;
        }
        kinds = parsed;
        break;
      }
      default:
        usage();
        return 1;
    }
  }
  if (!input || !outdir) {
    usage();
    return 1;
  }
  try {
    const result = render({ input, outdir, kinds });
    process.stdout.write(
      `rendered ${result.files.length} figures to ${outdir}; slopes in ${result.summaryPath}\n`,
    );
    return 0;
  } catch (err) {
    if (err instanceof EmptyReportError || err instanceof CsvParseError) {
      process.stderr.write(`${err.message}\n`);
      return 2;
    }
    if (err instanceof Error && "code" in err) {
      process.stderr.write(`${err.message}\n`);
      return 2;
    }
    throw err;
  }
}

process.exitCode = main(process.argv.slice(2));
