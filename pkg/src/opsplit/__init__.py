"""opsplit: iterative operator-splitting solvers for factored linear systems.

Higher-order constant-coefficient problems and integro-differential
equations are factored through their characteristic operator polynomial
into first-order systems, then integrated by one-side, two-side and fused
iterative splitting schemes; complex root systems run either through the
real block embedding or the explicit two-level real/imaginary sweep.  A
benchmark harness reproduces the two built-in experiments as CSV
error/timing reports.
"""

from .exceptions import (
    ConvergenceError,
    DimensionError,
    DivergenceError,
    DomainError,
    NumericalRankError,
    OpsplitError,
    SingularMatrixError,
    UnsupportedFormError,
)
from .factorize import (
    FactorizedSystem,
    HigherOrderProblem,
    IntegroProblem,
    companion_matrix,
    factor_nth_root,
    factor_residuals,
    factor_second_order,
    factorize_problem,
    integro_to_second_order,
    solve_vandermonde,
)
from .harness import (
    ErrorReport,
    ExperimentSpec,
    build_experiment,
    build_matrix_A,
    build_matrix_B,
    embedded_split_pair,
    run_experiment,
    write_csv,
)
from .itersplit import (
    ComplexSplitConfig,
    IterationTrace,
    SplitConfig,
    SplitPair,
    iterate_complex,
    solve_complex,
    solve_component,
    solve_multi,
    step_one_side,
    step_two_side,
    step_two_side_fused,
    substep_solve,
)
from .matkernel import (
    commutator_norm,
    diag_split,
    embed,
    lin_solve,
    mat_exp,
    mat_root,
    split_embedded,
)
from .oracle import ReferenceConfig, exact_solution, integro_direct, reference_integrate

__version__ = "0.1.0"
