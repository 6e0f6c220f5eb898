"""Benchmark harness: the two built-in experiments and the CSV reporter.

Experiment "integro" is the 10 x 10 memory problem
dc/dt = A c + B int c dt' on [0, 1]: it is differentiated to second order,
factored through the quadratic of the (A, B) pair, and each root is split
into its A-half and square-root part.  Experiment "third-order" is
c''' = A c on [0, 1]: the roots are phase multiples of the principal cube
root of A, each split into its diagonal and off-diagonal parts and run as
a real block-embedded system.

Both generator matrices have zero row sums, so the all-ones start vector
sits in the kernel of every operator involved and the continuous solution
is constant; the benchmark errors then sit at the solver's floor from the
first sweep on.  The "paper-literal" operator form of the integro
experiment uses the alternative square root sqrt(A A^T / 4 - B), which
does not annihilate the start vector and exercises genuinely transient
dynamics (at the price of factoring a different quadratic; see
factor_second_order).

run_experiment measures L2/max errors at t = horizon against the
designated ground truth (the augmented-system integration for "integro",
the companion-form integration for "third-order"), wall-clock time per
grid cell, and the commutator norm of the experiment's operator pair.
Grid cells are independent; rows are emitted ordered by
(scheme, tau, sweeps) whatever the execution order.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, asdict

import numpy as np

from .exceptions import DivergenceError, DomainError
from .factorize import (
    FactorizedSystem,
    HigherOrderProblem,
    IntegroProblem,
    companion_matrix,
    factor_nth_root,
    factor_second_order,
    factorize_problem,
    integro_to_second_order,
)
from .itersplit import SplitConfig, SplitPair, solve_component
from .matkernel import commutator_norm, diag_split, mat_root
from .oracle import exact_solution, integro_direct, reference_integrate

__all__ = [
    "ExperimentSpec",
    "ErrorReport",
    "ReportRow",
    "ExperimentSetup",
    "SCHEME_NAMES",
    "EXPERIMENTS",
    "build_matrix_A",
    "build_matrix_B",
    "build_experiment",
    "embedded_split_pair",
    "run_experiment",
    "run_cell",
    "time_cell",
    "write_csv",
]

# CLI/CSV scheme tokens -> internal scheme identifiers.
SCHEME_NAMES = {
    "oneside-a": "one-side-first",
    "oneside-b": "one-side-second",
    "twoside": "two-side",
    "twoside-fused": "two-side-fused",
}
EXPERIMENTS = ("integro", "third-order")
_DIM = 10
_SQ2 = np.sqrt(2.0)


def build_matrix_A() -> np.ndarray:
    """10 x 10 generator A: strictly lower 0.01 couplings with zero row sums.

    Row 1 couples only to column 2; rows 2..9 couple to all earlier
    columns with diagonal -0.01 (i-1); row 10 skips column 9.
    """
    A = np.zeros((_DIM, _DIM))
    A[0, 0] = -0.01
    A[0, 1] = 0.01
    for i in range(1, _DIM - 1):
        A[i, :i] = 0.01
        A[i, i] = -0.01 * i
    A[_DIM - 1, : _DIM - 2] = 0.01
    A[_DIM - 1, _DIM - 1] = -0.08
    return A


def build_matrix_B() -> np.ndarray:
    """10 x 10 generator B: the index-reversed conjugate J A J of build_matrix_A.

    Upper-triangular couplings of 0.01 toward later columns, diagonal
    -0.01 (10 - i), zero row sums.
    """
    B = np.zeros((_DIM, _DIM))
    B[0, 0] = -0.08
    B[0, 2:] = 0.01
    for i in range(1, _DIM - 1):
        B[i, i] = -0.01 * (_DIM - 1 - i)
        B[i, i + 1 :] = 0.01
    B[_DIM - 1, _DIM - 2] = 0.01
    B[_DIM - 1, _DIM - 1] = -0.01
    return B


@dataclass(frozen=True)
class ExperimentSpec:
    """Grid description for one benchmark run."""

    experiment: str = "integro"
    schemes: tuple = ("oneside-a", "oneside-b", "twoside")
    taus: tuple = (0.1, 0.05, 0.025)
    sweeps: tuple = (1, 2, 3, 4, 5, 6)
    root_set: str = "unity"
    operator_form: str = "derived"
    substeps: int = 8
    epsilon: float = 0.0
    dimension: int = _DIM
    horizon: float = 1.0

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise DomainError(f"unknown experiment {self.experiment!r}")
        object.__setattr__(self, "schemes", tuple(self.schemes))
        object.__setattr__(self, "taus", tuple(float(t) for t in self.taus))
        object.__setattr__(self, "sweeps", tuple(int(s) for s in self.sweeps))
        for s in self.schemes:
            if s not in SCHEME_NAMES:
                raise DomainError(f"unknown scheme {s!r}; pick from {sorted(SCHEME_NAMES)}")
        for t in self.taus:
            steps = round(self.horizon / t)
            if steps < 1 or abs(steps * t - self.horizon) > 1e-9:
                raise DomainError(f"tau={t} does not divide the horizon {self.horizon}")
        for s in self.sweeps:
            if not 1 <= s <= 64:
                raise DomainError("sweep counts must lie in 1..64")
        if self.root_set not in ("unity", "paper-literal"):
            raise DomainError(f"unknown root_set {self.root_set!r}")
        if self.operator_form not in ("derived", "paper-literal"):
            raise DomainError(f"unknown operator_form {self.operator_form!r}")
        if self.dimension != _DIM:
            raise DomainError(f"built-in experiments are {_DIM}-dimensional")
        if self.substeps < 1:
            raise DomainError("substeps must be >= 1")
        if self.epsilon < 0:
            raise DomainError("epsilon must be >= 0")

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentSpec":
        return cls(**json.loads(text))


@dataclass(frozen=True)
class ReportRow:
    experiment: str
    scheme: str
    root_set: str
    tau: float
    sweeps: int
    error_l2: float
    error_inf: float
    wall_ms: float
    commutator_norm: float
    oracle: str


@dataclass
class ErrorReport:
    rows: list = field(default_factory=list)

    def sorted_rows(self) -> list:
        return sorted(self.rows, key=lambda r: (r.scheme, r.tau, r.sweeps))


@dataclass(frozen=True)
class ExperimentSetup:
    """Everything run_experiment needs, built once per configuration."""

    spec: ExperimentSpec
    fs: FactorizedSystem
    components: tuple          # per root: (start vector, SplitPair)
    truth: np.ndarray          # designated ground truth at t = horizon
    exact: np.ndarray          # semigroup solution of the factored system
    oracle_name: str
    commutator: float
    embedded: bool             # components run in the real 2m embedding

    def collapse(self, states) -> np.ndarray:
        """Sum per-root component states into the solution vector."""
        total = np.sum(states, axis=0)
        if self.embedded:
            m = total.shape[0] // 2
            return total[:m] + 1j * total[m:]
        return total


def embedded_split_pair(root: np.ndarray) -> SplitPair:
    """Real 2m x 2m split pair for a complex root, diagonal/off-diagonal.

    The active block keeps only the real diagonal part; the lagged block
    carries the real off-diagonal part plus the full imaginary coupling,
    so that first + second is exactly the block embedding of the root.
    """
    d1, d2 = diag_split(root)
    m = root.shape[0]
    z = np.zeros((m, m))
    re1, re2 = np.real(d1), np.real(d2)
    im_sum = np.imag(d1 + d2)
    first = np.block([[re1, z], [z, re1]])
    second = np.block([[re2, -im_sum], [im_sum, re2]])
    return SplitPair(first, second)


def _integro_setup(spec: ExperimentSpec, c0: np.ndarray | None = None) -> ExperimentSetup:
    A, B = build_matrix_A(), build_matrix_B()
    c0 = np.ones(_DIM) if c0 is None else np.asarray(c0, dtype=float)
    problem = IntegroProblem(A=A, B=B, c0=c0, horizon=spec.horizon)
    roots = factor_second_order(A, B, operator_form=spec.operator_form)
    fs = factorize_problem(roots, integro_to_second_order(problem))
    half = A.astype(complex) / 2.0
    pairs = tuple(SplitPair(half, root - half) for root in roots)
    components = tuple((w, p) for w, p in zip(fs.weights, pairs))
    truth = integro_direct(problem, spec.horizon).astype(complex)
    return ExperimentSetup(
        spec=spec,
        fs=fs,
        components=components,
        truth=truth,
        exact=exact_solution(fs, spec.horizon),
        oracle_name="integro-direct",
        commutator=commutator_norm(A, B),
        embedded=False,
    )


def _third_order_setup(spec: ExperimentSpec, c0: np.ndarray | None = None) -> ExperimentSetup:
    A = build_matrix_A()
    c0 = np.ones(_DIM, dtype=complex) if c0 is None else np.asarray(c0, dtype=complex)
    R = mat_root(A, 3)
    roots = factor_nth_root(A, 3, root_set=spec.root_set)
    derivs = (c0, (1.0 - _SQ2) / 3.0 * (R @ c0), (R @ R @ c0) / 3.0)
    problem_coeffs = (np.eye(_DIM), np.zeros((_DIM, _DIM)), np.zeros((_DIM, _DIM)), -A)
    problem = HigherOrderProblem(order=3, coeffs=problem_coeffs,
                                 init_derivs=derivs, horizon=spec.horizon)
    fs = factorize_problem(roots, problem)
    components = tuple(
        (np.concatenate([np.real(w), np.imag(w)]), embedded_split_pair(root))
        for w, root in zip(fs.weights, roots)
    )
    truth = reference_integrate(companion_matrix(problem),
                                np.concatenate(derivs), spec.horizon)[:_DIM]
    d1, d2 = diag_split(R)
    return ExperimentSetup(
        spec=spec,
        fs=fs,
        components=components,
        truth=truth,
        exact=exact_solution(fs, spec.horizon),
        oracle_name="companion",
        commutator=commutator_norm(d1, d2),
        embedded=True,
    )


def build_experiment(spec: ExperimentSpec, c0=None) -> ExperimentSetup:
    """Construct the operators, weights, split pairs and oracle for a spec.

    c0 overrides the default all-ones start vector; the default sits in
    the kernel of the generator matrices (constant solution), so tests of
    transient behaviour pass a vector with a component outside it.
    """
    if spec.experiment == "integro":
        return _integro_setup(spec, c0)
    return _third_order_setup(spec, c0)


def run_cell(setup: ExperimentSetup, scheme: str, tau: float, sweeps: int):
    """Integrate one grid cell to the horizon; returns the t=T solution."""
    cfg = SplitConfig(
        scheme=SCHEME_NAMES[scheme],
        tau=tau,
        sweeps=sweeps,
        epsilon=setup.spec.epsilon,
        substeps=setup.spec.substeps,
    )
    finals = [
        solve_component(pair, cfg, start, setup.spec.horizon)[-1]
        for start, pair in setup.components
    ]
    return setup.collapse(finals)


def time_cell(setup: ExperimentSetup, scheme: str, tau: float, sweeps: int,
              reps: int = 5) -> float:
    """Median wall-clock milliseconds over reps runs of one grid cell."""
    samples = []
    for _ in range(reps):
        t0 = time.perf_counter()
        run_cell(setup, scheme, tau, sweeps)
        samples.append((time.perf_counter() - t0) * 1e3)
    return float(np.median(samples))


def run_experiment(spec: ExperimentSpec, setup: ExperimentSetup | None = None,
                   oracle: str = "designated") -> ErrorReport:
    """Run the full scheme x tau x sweeps grid of a spec.

    Errors are measured at t = horizon against the designated ground
    truth, or against the factored semigroup solution when
    oracle="semigroup" (the convergence target of the iteration itself).
    A diverging cell is recorded as a row with infinite errors rather
    than raised.
    """
    if oracle not in ("designated", "semigroup"):
        raise DomainError(f"unknown oracle choice {oracle!r}")
    setup = setup or build_experiment(spec)
    reference = setup.truth if oracle == "designated" else setup.exact
    oracle_name = setup.oracle_name if oracle == "designated" else "semigroup"
    root_set = spec.root_set if spec.experiment == "third-order" else ""
    report = ErrorReport()
    for scheme in spec.schemes:
        for tau in spec.taus:
            for sweeps in spec.sweeps:
                t0 = time.perf_counter()
                try:
                    u = run_cell(setup, scheme, tau, sweeps)
                    err_l2 = float(np.linalg.norm(u - reference))
                    err_inf = float(np.max(np.abs(u - reference)))
                except DivergenceError:
                    err_l2 = err_inf = float("inf")
                wall = (time.perf_counter() - t0) * 1e3
                report.rows.append(ReportRow(
                    experiment=spec.experiment,
                    scheme=scheme,
                    root_set=root_set,
                    tau=tau,
                    sweeps=sweeps,
                    error_l2=err_l2,
                    error_inf=err_inf,
                    wall_ms=wall,
                    commutator_norm=setup.commutator,
                    oracle=oracle_name,
                ))
    report.rows = report.sorted_rows()
    return report


CSV_HEADER = "experiment,scheme,root_set,tau,sweeps,error_l2,error_inf,wall_ms,commutator_norm,oracle"


def write_csv(report: ErrorReport, path) -> None:
    """Serialize a report; full-precision decimals, one line per row."""
    lines = [CSV_HEADER]
    for r in report.sorted_rows():
        lines.append(",".join([
            r.experiment,
            r.scheme,
            r.root_set,
            repr(r.tau),
            str(r.sweeps),
            repr(r.error_l2),
            repr(r.error_inf),
            repr(r.wall_ms),
            repr(r.commutator_norm),
            r.oracle,
        ]))
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc
