"""Factorization of higher-order linear problems into first-order systems.

A constant-coefficient problem

    A0 u^(n) + A1 u^(n-1) + ... + An u = 0

whose characteristic operator polynomial factors as prod_i (lambda I - B_i)
decouples into n independent first-order systems u_i' = B_i u_i.  The
initial-condition weights w_i (each the product of the classical constant
d_i with the component start vector) come from the block Vandermonde
system with blocks B_i^r, and the solution is the semigroup sum
sum_i exp(B_i t) w_i.

Two factorization families are supported, matching the two problem shapes
this library targets: the quadratic of a (near-)commuting operator pair,
and the pure n-th-root family B_k = omega_k A^(1/n).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matkernel
from .exceptions import (
    DimensionError,
    DomainError,
    NumericalRankError,
    SingularMatrixError,
    UnsupportedFormError,
)

__all__ = [
    "HigherOrderProblem",
    "FactorizedSystem",
    "IntegroProblem",
    "integro_to_second_order",
    "factor_second_order",
    "factor_residuals",
    "factor_nth_root",
    "NTH_ROOT_PHASE_SETS",
    "solve_vandermonde",
    "factorize_problem",
    "companion_matrix",
]

# Phase sets for factor_nth_root. "unity" uses the n-th roots of unity and
# factors lambda^n - A exactly; "paper-literal" is the literal phase
# triple {1, -sqrt2/2 + i sqrt2/2, -sqrt2/2 - i sqrt2/2} for n = 3, whose
# non-real members are not cube roots of unity.
_SQ2H = np.sqrt(2.0) / 2.0
NTH_ROOT_PHASE_SETS = ("unity", "paper-literal")
_LITERAL_PHASES = (1.0 + 0.0j, complex(-_SQ2H, _SQ2H), complex(-_SQ2H, -_SQ2H))


def _as_vector(v, dim: int, name: str) -> np.ndarray:
    v = np.asarray(v)
    if v.shape != (dim,):
        raise DimensionError(f"{name} must be a vector of length {dim}, got {v.shape}")
    return v


@dataclass(frozen=True)
class HigherOrderProblem:
    """Order-n problem A0 u^(n) + ... + An u = 0 with a derivative stack at t=0.

    coeffs lists A0..An (A0 must be the identity for the companion form);
    init_derivs lists u(0), u'(0), ..., u^(n-1)(0).
    """

    order: int
    coeffs: tuple
    init_derivs: tuple
    horizon: float = 1.0

    def __post_init__(self):
        if self.order < 2:
            raise DomainError(f"order must be >= 2, got {self.order}")
        if len(self.coeffs) != self.order + 1:
            raise DimensionError(
                f"need {self.order + 1} coefficient matrices, got {len(self.coeffs)}"
            )
        if len(self.init_derivs) != self.order:
            raise DimensionError(
                f"need {self.order} initial derivatives, got {len(self.init_derivs)}"
            )
        dim = np.asarray(self.coeffs[0]).shape[0]
        coeffs = tuple(matkernel._as_square(c, "coefficient") for c in self.coeffs)
        derivs = tuple(_as_vector(v, dim, "initial derivative") for v in self.init_derivs)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "init_derivs", derivs)
        if self.horizon <= 0:
            raise DomainError("horizon must be positive")

    @property
    def dim(self) -> int:
        return self.coeffs[0].shape[0]


@dataclass(frozen=True)
class FactorizedSystem:
    """Root matrices B_1..B_n with their initial-condition weights w_i."""

    roots: tuple
    weights: tuple

    def __post_init__(self):
        if len(self.roots) != len(self.weights):
            raise DimensionError("one weight vector per root required")
        dim = np.asarray(self.roots[0]).shape[0]
        roots = tuple(
            matkernel._as_square(r, "root").astype(complex) for r in self.roots
        )
        weights = tuple(
            _as_vector(w, dim, "weight").astype(complex) for w in self.weights
        )
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "weights", weights)

    @property
    def order(self) -> int:
        return len(self.roots)

    @property
    def dim(self) -> int:
        return self.roots[0].shape[0]

    def initial_state(self) -> np.ndarray:
        """Reconstruction of u(0) = sum_i w_i."""
        return np.sum(self.weights, axis=0)


@dataclass(frozen=True)
class IntegroProblem:
    """dc/dt = A c(t) + B * integral_0^t c(t') dt' on [0, horizon]."""

    A: np.ndarray
    B: np.ndarray
    c0: np.ndarray
    horizon: float = 1.0

    def __post_init__(self):
        A = matkernel._as_square(self.A, "A")
        B = matkernel._as_square(self.B, "B")
        if A.shape != B.shape:
            raise DimensionError(f"A and B shapes differ: {A.shape} vs {B.shape}")
        c0 = _as_vector(self.c0, A.shape[0], "c0")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "c0", c0)
        if self.horizon <= 0:
            raise DomainError("horizon must be positive")

    @property
    def dim(self) -> int:
        return self.A.shape[0]


def integro_to_second_order(p: IntegroProblem) -> HigherOrderProblem:
    """Differentiate the memory equation once: c'' = A c' + B c.

    The integral term vanishes at t = 0, so the derivative stack is
    [c0, A @ c0]. Coefficients are stored in the normalized left-hand-side
    form [I, -A, -B].
    """
    eye = np.eye(p.dim)
    return HigherOrderProblem(
        order=2,
        coeffs=(eye, -p.A, -p.B),
        init_derivs=(p.c0, p.A @ p.c0),
        horizon=p.horizon,
    )


def factor_second_order(A, B, operator_form: str = "derived") -> list[np.ndarray]:
    """Roots B_{1,2} of the quadratic lambda^2 - A lambda - B.

    operator_form="derived" uses S = sqrt(A^2/4 + B) so that
    (lambda - B1)(lambda - B2) expands back to the quadratic whenever A and
    B commute.  operator_form="paper-literal" uses the alternative
    S = sqrt(A A^T / 4 - B) instead; it keeps B1 + B2 = A but does not
    satisfy the product identity, and is exposed for comparison runs.

    Returns [B1, B2] = [A/2 + S, A/2 - S].  The sum identity
    ||B1 + B2 - A|| <= 1e-10 is verified; the product residual
    ||B1 B2 + B|| scales with the commutator of A and B and is reported by
    factor_residuals rather than enforced.
    """
    A = matkernel._as_square(A, "A")
    B = matkernel._as_square(B, "B")
    if A.shape != B.shape:
        raise DimensionError(f"A and B shapes differ: {A.shape} vs {B.shape}")
    if operator_form == "derived":
        S = matkernel.mat_root(A @ A / 4.0 + B, 2)
    elif operator_form == "paper-literal":
        S = matkernel.mat_root(A @ A.T / 4.0 - B, 2)
    else:
        raise DomainError(f"unknown operator_form {operator_form!r}")
    half = A.astype(complex) / 2.0
    B1, B2 = half + S, half - S
    sum_residual = np.linalg.norm(B1 + B2 - A)
    if sum_residual > 1e-10 * max(1.0, np.linalg.norm(A)):
        raise NumericalRankError(f"factorization sum residual {sum_residual:.3e}")
    return [B1, B2]


def factor_residuals(A, B, roots) -> dict:
    """Diagnostics for a second-order factorization.

    Returns the sum residual ||B1 + B2 - A||, the product residual
    ||B1 B2 + B||, the commutator norm of (A, B), and their ratio kappa
    (product residual per unit commutator; 0 when the commutator vanishes).
    """
    B1, B2 = roots
    comm = matkernel.commutator_norm(A, B)
    product = float(np.linalg.norm(B1 @ B2 + B))
    return {
        "sum_residual": float(np.linalg.norm(B1 + B2 - A)),
        "product_residual": product,
        "commutator_norm": comm,
        "kappa": product / comm if comm > 0 else 0.0,
    }


def factor_nth_root(A, n: int, root_set: str = "unity") -> list[np.ndarray]:
    """Roots B_k = omega_k A^(1/n) for the pure n-th-order problem u^(n) = A u.

    root_set="unity" takes omega_k = exp(2 pi i k / n), which factors
    lambda^n - A exactly (each B_k^n = A up to roundoff).  For n = 3,
    root_set="paper-literal" takes the literal phases
    {1, -sqrt2/2 + i sqrt2/2, -sqrt2/2 - i sqrt2/2}; the non-real pair are
    not cube roots of unity, so those roots do not cube back to A.
    """
    root_set = root_set.replace("_", "-")
    if root_set not in NTH_ROOT_PHASE_SETS:
        raise DomainError(f"unknown root_set {root_set!r}")
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    if root_set == "paper-literal" and n != 3:
        raise DomainError("the paper-literal phase set is defined only for n = 3")
    R = matkernel.mat_root(A, n)
    if root_set == "unity":
        phases = [np.exp(2j * np.pi * k / n) for k in range(n)]
    else:
        phases = list(_LITERAL_PHASES)
    return [ph * R for ph in phases]


def solve_vandermonde(roots, init_derivs) -> list[np.ndarray]:
    """Initial-condition weights from the block Vandermonde system.

    Solves the stacked system with block (r, i) = B_i^r (r = 0..n-1,
    B^0 = I) for the weights w_i, so that sum_i B_i^r w_i reproduces the
    r-th initial derivative.  The minimum-norm solution is taken: when the
    root matrices share an exact kernel the system is singular but
    consistent, and the minimum-norm weights are the natural (kernel-free)
    choice.  Repeated roots raise SingularMatrixError, as does a residual
    beyond 1e-10 relative (an inconsistent stack).
    """
    roots = [matkernel._as_square(r, "root").astype(complex) for r in roots]
    n = len(roots)
    if n < 1:
        raise DimensionError("need at least one root")
    dim = roots[0].shape[0]
    if len(init_derivs) != n:
        raise DimensionError(f"need {n} initial derivatives, got {len(init_derivs)}")
    derivs = [_as_vector(v, dim, "initial derivative").astype(complex) for v in init_derivs]

    scale = max(np.linalg.norm(r) for r in roots)
    for i in range(n):
        for j in range(i + 1, n):
            if np.linalg.norm(roots[i] - roots[j]) <= 1e-12 * max(1.0, scale):
                raise SingularMatrixError(
                    f"roots {i} and {j} coincide; block Vandermonde is singular"
                )

    blocks = []
    row_blocks = [np.eye(dim, dtype=complex) for _ in range(n)]
    for _ in range(n):
        blocks.append(list(row_blocks))
        row_blocks = [roots[i] @ row_blocks[i] for i in range(n)]
    V = np.block(blocks)
    rhs = np.concatenate(derivs)

    w = matkernel.lin_solve(V, rhs, min_norm=True)
    residual = np.linalg.norm(V @ w - rhs)
    if residual > 1e-10 * max(1.0, np.linalg.norm(rhs)):
        raise SingularMatrixError(
            f"block Vandermonde residual {residual:.3e} exceeds tolerance"
        )
    return [w[i * dim : (i + 1) * dim] for i in range(n)]


def factorize_problem(roots, problem: HigherOrderProblem) -> FactorizedSystem:
    """Bundle roots with the weights solved from the problem's derivative stack."""
    weights = solve_vandermonde(roots, problem.init_derivs)
    return FactorizedSystem(roots=tuple(roots), weights=tuple(weights))


def companion_matrix(p: HigherOrderProblem) -> np.ndarray:
    """First-order companion form of the order-n problem (requires A0 = I).

    Acting on the stacked state (u, u', ..., u^(n-1)), the last block row
    is (-A_n, -A_{n-1}, ..., -A_1).
    """
    dim = p.dim
    eye = np.eye(dim)
    if np.linalg.norm(p.coeffs[0] - eye) > 1e-14 * dim:
        raise UnsupportedFormError("companion form requires the leading coefficient I")
    n = p.order
    C = np.zeros((n * dim, n * dim))
    for r in range(n - 1):
        C[r * dim : (r + 1) * dim, (r + 1) * dim : (r + 2) * dim] = eye
    for i in range(n):
        # coefficient A_{n-i} multiplies the i-th derivative block
        C[(n - 1) * dim : n * dim, i * dim : (i + 1) * dim] = -p.coeffs[n - i]
    return C
