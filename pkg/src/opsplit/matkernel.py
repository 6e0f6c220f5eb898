"""Dense real/complex matrix kernel.

Matrix exponentials, principal p-th roots, diagonal/off-diagonal splits,
the complex-to-real block embedding, commutator diagnostics and dense
linear solves.  All operations are pure functions of their inputs: no
global state, outputs never alias inputs, and repeated calls on identical
inputs return identical bytes.

Matrices are plain numpy arrays. Real matrices are float64, complex ones
complex128; an "embedded" matrix is the real 2m x 2m block form
``[[Re M, -Im M], [Im M, Re M]]`` of a complex m x m matrix.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .exceptions import (
    DimensionError,
    DomainError,
    NumericalRankError,
    SingularMatrixError,
)

__all__ = [
    "mat_exp",
    "mat_root",
    "diag_split",
    "embed",
    "split_embedded",
    "commutator_norm",
    "lin_solve",
]

# Eigenvalue-magnitude threshold (relative to ||M||) below which a Schur
# diagonal entry is treated as exactly zero by mat_root, so that singular
# matrices keep an exact kernel instead of a noise-scale one.
ZERO_EIG_RTOL = 1e-13

# Eigenvector-basis condition number above which a matrix is declared
# defective for root extraction.
DEFECT_COND_LIMIT = 1e12


def _as_square(M, name: str = "matrix") -> np.ndarray:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise DomainError(f"{name} has non-finite entries")
    return M


def mat_exp(M, t: float = 1.0) -> np.ndarray:
    """Matrix exponential propagator exp(M*t).

    Backed by scaling-and-squaring with a diagonal Pade approximant and
    norm-based scaling selection (scipy.linalg.expm). Deterministic: the
    same input yields bit-identical output.
    """
    M = _as_square(M)
    if not np.isfinite(t):
        raise DomainError("t must be finite")
    out = scipy.linalg.expm(M * float(t))
    return np.ascontiguousarray(out)


def _principal_root_scalar(lam: complex, p: int) -> complex:
    if lam == 0:
        return 0.0 + 0.0j
    return np.abs(lam) ** (1.0 / p) * np.exp(1j * np.angle(lam) / p)


def mat_root(M, p: int) -> np.ndarray:
    """Principal p-th root of a square matrix.

    Computed from the complex Schur form: the root of the triangular
    factor is built superdiagonal by superdiagonal from the identity
    U^p = T, then transformed back. Eigenvalues are mapped through the
    principal branch, arg in (-pi/p, pi/p]; an eigenvalue of zero maps to
    a root of zero (entries below ZERO_EIG_RTOL * ||M|| are snapped so a
    singular input keeps an exact kernel).

    Raises NumericalRankError when the matrix is defective beyond
    tolerance (eigenvector condition number > 1e12, or a repeated zero
    eigenvalue with a non-trivial coupling), and checks the residual
    ||R^p - M|| <= 1e-10 * max(1, ||M||) before returning.
    """
    M = _as_square(M)
    if not isinstance(p, (int, np.integer)) or p < 2:
        raise DomainError(f"root order p must be an integer >= 2, got {p!r}")
    n = M.shape[0]
    scale = np.linalg.norm(M)

    # Defectiveness diagnostic per the documented threshold.
    eigvals, eigvecs = np.linalg.eig(M.astype(complex))
    cond_v = np.linalg.cond(eigvecs)
    if not np.isfinite(cond_v) or cond_v > DEFECT_COND_LIMIT:
        raise NumericalRankError(
            f"matrix is defective to working precision "
            f"(eigenvector condition {cond_v:.3e} > {DEFECT_COND_LIMIT:.0e}); "
            f"principal {p}-th root is not computed"
        )

    T, Q = scipy.linalg.schur(M.astype(complex), output="complex")
    diag = T.diagonal().copy()
    diag[np.abs(diag) <= ZERO_EIG_RTOL * max(1.0, scale)] = 0.0

    mu = np.array([_principal_root_scalar(lam, p) for lam in diag])
    U = np.zeros((n, n), dtype=complex)
    np.fill_diagonal(U, mu)

    # Denominators sum_{s=0}^{p-1} mu_i^s mu_j^{p-1-s}; zero only when two
    # principal roots are both zero.
    powers = np.vstack([mu**s for s in range(p)])  # (p, n)
    for d in range(1, n):
        C = np.linalg.matrix_power(U, p)  # multi-jump paths of distance < d
        for i in range(n - d):
            j = i + d
            den = np.dot(powers[:, i], powers[::-1, j])
            num = T[i, j] - C[i, j]
            if den == 0:
                if abs(num) <= 1e-12 * max(1.0, scale):
                    U[i, j] = 0.0
                else:
                    raise NumericalRankError(
                        f"repeated zero eigenvalue with coupling at ({i},{j}); "
                        f"no principal {p}-th root"
                    )
            else:
                U[i, j] = num / den

    R = Q @ U @ Q.conj().T
    residual = np.linalg.norm(np.linalg.matrix_power(R, p) - M)
    if residual > 1e-10 * max(1.0, scale):
        raise NumericalRankError(
            f"p-th root residual {residual:.3e} exceeds tolerance for ||M||={scale:.3e}"
        )
    return R


def diag_split(M) -> tuple[np.ndarray, np.ndarray]:
    """Split M into (D, R): its diagonal part and the off-diagonal rest.

    D + R == M holds bitwise, entry by entry.
    """
    M = _as_square(M)
    D = np.zeros_like(M)
    idx = np.arange(M.shape[0])
    D[idx, idx] = M[idx, idx]
    R = M - D
    return D, R


def embed(M) -> np.ndarray:
    """Real 2m x 2m block embedding [[Re M, -Im M], [Im M, Re M]].

    The map is a ring homomorphism: it carries complex sums and products
    to the corresponding block sums and products, and commutes with the
    matrix exponential.
    """
    M = _as_square(M)
    re, im = np.real(M), np.imag(M)
    return np.block([[re, -im], [im, re]])


def split_embedded(E) -> np.ndarray:
    """Inverse of embed: recover the complex m x m matrix from its block form."""
    E = _as_square(E, "embedded matrix")
    n = E.shape[0]
    if n % 2:
        raise DimensionError("embedded matrix must have even dimension")
    m = n // 2
    return E[:m, :m] + 1j * E[m:, :m]


def commutator_norm(M1, M2) -> float:
    """Frobenius norm of the commutator M1 @ M2 - M2 @ M1."""
    M1 = _as_square(M1, "M1")
    M2 = _as_square(M2, "M2")
    if M1.shape != M2.shape:
        raise DimensionError(f"shape mismatch {M1.shape} vs {M2.shape}")
    return float(np.linalg.norm(M1 @ M2 - M2 @ M1))


def lin_solve(M, rhs, min_norm: bool = False) -> np.ndarray:
    """Solve M @ x = rhs for stacked vectors.

    With ``min_norm=True`` the minimum-norm least-squares solution is
    returned instead of the LU one; this is the right call for consistent
    systems whose matrix carries an exact kernel (a root matrix with a
    zero eigenvalue, say), where LU back-substitution would inject an
    arbitrary kernel component.

    The residual is verified against
    ``||M x - rhs|| <= 1e-10 (||M|| ||x|| + ||rhs||)``; failure raises
    SingularMatrixError. An exactly singular LU factorization names the
    offending pivot.
    """
    M = _as_square(M)
    rhs = np.asarray(rhs)
    if rhs.shape[0] != M.shape[0]:
        raise DimensionError(f"rhs length {rhs.shape[0]} vs matrix dim {M.shape[0]}")

    if min_norm:
        x = np.linalg.lstsq(M, rhs, rcond=None)[0]
    else:
        try:
            x = np.linalg.solve(M, rhs)
        except np.linalg.LinAlgError:
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")  # the zero pivot is the point
                lu, _ = scipy.linalg.lu_factor(M, check_finite=False)
            pivots = np.abs(np.diag(lu))
            worst = int(np.argmin(pivots))
            raise SingularMatrixError(
                f"matrix is singular to working precision (pivot {worst} is "
                f"{pivots[worst]:.3e})"
            ) from None

    residual = np.linalg.norm(M @ x - rhs)
    bound = 1e-10 * (np.linalg.norm(M) * np.linalg.norm(x) + np.linalg.norm(rhs))
    if residual > max(bound, 1e-300):
        raise SingularMatrixError(
            f"solve residual {residual:.3e} exceeds {bound:.3e}; "
            f"system is singular or inconsistent"
        )
    return x
