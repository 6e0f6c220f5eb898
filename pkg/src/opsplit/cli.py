"""Command-line driver: gen-matrices, solve and bench subcommands.

Exit codes: 0 success, 1 usage error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .exceptions import OpsplitError
from .harness import (
    EXPERIMENTS,
    SCHEME_NAMES,
    ExperimentSpec,
    build_experiment,
    build_matrix_A,
    build_matrix_B,
    run_experiment,
    write_csv,
)

__all__ = ["run_cli", "main"]


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; this contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _parse_taus(text: str) -> tuple:
    try:
        values = tuple(float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad tau list {text!r}")
    if not values or any(v <= 0 for v in values):
        raise argparse.ArgumentTypeError(f"tau values must be positive: {text!r}")
    return values


def _parse_sweeps(text: str) -> tuple:
    try:
        if ":" in text:
            lo, hi = text.split(":")
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError
            return tuple(range(lo, hi + 1))
        return (int(text),)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"sweeps must be 'a:b' (inclusive) or a single integer, got {text!r}"
        )


def _parse_schemes(text: str) -> tuple:
    schemes = tuple(s.strip() for s in text.split(","))
    for s in schemes:
        if s not in SCHEME_NAMES:
            raise argparse.ArgumentTypeError(
                f"unknown scheme {s!r}; pick from {','.join(sorted(SCHEME_NAMES))}"
            )
    return schemes


def _add_spec_flags(p: _Parser, include_grid: bool = True):
    p.add_argument("--example", choices=EXPERIMENTS, default="integro",
                   help="which built-in experiment to run")
    p.add_argument("--schemes", type=_parse_schemes,
                   default=("oneside-a", "oneside-b", "twoside"),
                   help="comma-separated scheme list")
    p.add_argument("--sweeps", type=_parse_sweeps, default=tuple(range(1, 7)),
                   help="sweep range a:b (inclusive) or a single count")
    p.add_argument("--tau", type=_parse_taus, default=(0.1, 0.05, 0.025),
                   help="comma-separated step sizes")
    p.add_argument("--root-set", choices=("unity", "paper-literal"),
                   default="unity", help="phase set for the third-order roots")
    p.add_argument("--operator-form", choices=("derived", "paper-literal"),
                   default="derived", help="square-root operator variant (integro)")
    p.add_argument("--substeps", type=int, default=8,
                   help="inner solver sub-intervals per tau")
    p.add_argument("--epsilon", type=float, default=0.0,
                   help="sweep stop tolerance; 0 runs exactly the configured sweeps")
    p.add_argument("--print-spec", action="store_true",
                   help="print the resolved spec as JSON and exit")
    if include_grid:
        p.add_argument("--out", default=None, help="CSV output path")


def _build_spec(args) -> ExperimentSpec:
    return ExperimentSpec(
        experiment=args.example,
        schemes=args.schemes,
        taus=args.tau,
        sweeps=args.sweeps,
        root_set=args.root_set,
        operator_form=args.operator_form,
        substeps=args.substeps,
        epsilon=args.epsilon,
    )


def _fmt_matrix(M: np.ndarray) -> str:
    return "\n".join(",".join(repr(float(v)) for v in row) for row in M)


def _cmd_gen_matrices(args) -> int:
    print("# A")
    print(_fmt_matrix(build_matrix_A()))
    print("# B")
    print(_fmt_matrix(build_matrix_B()))
    return 0


def _cmd_bench(args) -> int:
    spec = _build_spec(args)
    if args.print_spec:
        print(spec.to_json())
        return 0
    report = run_experiment(spec)
    if args.out:
        write_csv(report, args.out)
        print(f"wrote {len(report.rows)} rows to {args.out}")
    else:
        from .harness import CSV_HEADER

        print(CSV_HEADER)
        for r in report.sorted_rows():
            print(f"{r.experiment},{r.scheme},{r.root_set},{r.tau!r},{r.sweeps},"
                  f"{r.error_l2!r},{r.error_inf!r},{r.wall_ms!r},"
                  f"{r.commutator_norm!r},{r.oracle}")
    return 0


def _cmd_solve(args) -> int:
    if len(args.tau) != 1 or len(args.sweeps) != 1 or len(args.schemes) != 1:
        _usage_error(
            "solve needs exactly one --tau value, one --sweeps count and one scheme"
        )
        raise SystemExit(1)
    spec = _build_spec(args)
    if args.print_spec:
        print(spec.to_json())
        return 0
    from .harness import run_cell

    setup = build_experiment(spec)
    u = run_cell(setup, spec.schemes[0], spec.taus[0], spec.sweeps[0])
    if not np.all(np.isfinite(u)):
        sys.stderr.write("solve produced non-finite state\n")
        return 2
    err = u - setup.truth
    if np.all(np.abs(np.imag(u)) < 1e-14):
        state = ",".join(repr(float(np.real(v))) for v in u)
    else:
        state = ",".join(repr(complex(v)) for v in u)
    print(f"state@{spec.horizon}: {state}")
    print(f"error_l2: {float(np.linalg.norm(err))!r}")
    print(f"error_inf: {float(np.max(np.abs(err)))!r}")
    print(f"oracle: {setup.oracle_name}")
    return 0


def _usage_error(message: str) -> int:
    sys.stderr.write(f"opsplit: error: {message}\n")
    return 1


def run_cli(argv=None) -> int:
    parser = _Parser(prog="opsplit",
                     description="factored operator-splitting solvers and benchmarks")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p_gen = sub.add_parser("gen-matrices", help="print the generator matrices as CSV")
    p_gen.set_defaults(func=_cmd_gen_matrices)

    p_solve = sub.add_parser("solve", help="integrate one configuration")
    _add_spec_flags(p_solve, include_grid=False)
    p_solve.set_defaults(func=_cmd_solve)

    p_bench = sub.add_parser("bench", help="run a benchmark grid and emit CSV")
    _add_spec_flags(p_bench, include_grid=True)
    p_bench.set_defaults(func=_cmd_bench)

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    if not getattr(args, "command", None):
        parser.print_usage(sys.stderr)
        return 1
    try:
        return args.func(args)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 1
    except OpsplitError as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"i/o failure: {exc}\n")
        return 2


def main() -> None:
    raise SystemExit(run_cli())


if __name__ == "__main__":
    main()
