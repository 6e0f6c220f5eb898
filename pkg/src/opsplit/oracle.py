"""Ground-truth solutions for the solver and benchmark suites.

Two independent routes are kept deliberately separate:

* exact_solution evaluates the semigroup sum of a factorized system
  through the matrix exponential;
* reference_integrate marches y' = M y with a hand-rolled classical
  4-stage Runge-Kutta loop under step-halving Richardson control, and
  shares no code with mat_exp.

integro_direct integrates the memory equation via its augmented first-order
form (c' = A c + B q, q' = c, q(0) = 0), which is equivalent to the
integro-differential equation and independent of any factorization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ConvergenceError, DomainError
from .factorize import FactorizedSystem, IntegroProblem
from .matkernel import mat_exp

__all__ = [
    "ReferenceConfig",
    "exact_solution",
    "reference_integrate",
    "integro_direct",
]


@dataclass(frozen=True)
class ReferenceConfig:
    """Step-halving control for the reference integrator.

    base_step defaults to horizon/1024 when left as None. tol bounds the
    Richardson error estimate ||y_h - y_{h/2}|| / 15 at the endpoint.
    """

    tol: float = 1e-10
    base_step: float | None = None
    max_halvings: int = 24

    def __post_init__(self):
        if self.tol <= 0:
            raise DomainError("tolerance must be positive")
        if self.base_step is not None and self.base_step <= 0:
            raise DomainError("base step must be positive")


def exact_solution(fs: FactorizedSystem, t: float) -> np.ndarray:
    """Semigroup solution sum_i exp(B_i t) w_i of a factorized system."""
    out = np.zeros(fs.dim, dtype=complex)
    for root, w in zip(fs.roots, fs.weights):
        out += mat_exp(root, t) @ w
    return out


def _rk4(M: np.ndarray, y0: np.ndarray, t: float, steps: int) -> np.ndarray:
    h = t / steps
    y = y0
    for _ in range(steps):
        k1 = M @ y
        k2 = M @ (y + (h / 2) * k1)
        k3 = M @ (y + (h / 2) * k2)
        k4 = M @ (y + h * k3)
        y = y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
    return y


def reference_integrate(M, y0, t: float, cfg: ReferenceConfig | None = None) -> np.ndarray:
    """y(t) for y' = M y by classical RK4 with step-halving Richardson control.

    Starts from cfg.base_step (default t/1024), halves until the endpoint
    estimate meets cfg.tol, and returns the Richardson-extrapolated value
    (16 y_{h/2} - y_h) / 15. Raises ConvergenceError if the step count
    underflows the halving budget first. Never touches mat_exp.
    """
    cfg = cfg or ReferenceConfig()
    M = np.asarray(M)
    y0 = np.asarray(y0)
    if np.iscomplexobj(M) or np.iscomplexobj(y0):
        M = M.astype(complex)
        y0 = y0.astype(complex)
    else:
        y0 = y0.astype(float)
    if t == 0:
        return y0.copy()
    base = cfg.base_step if cfg.base_step is not None else abs(t) / 1024.0
    steps = max(1, int(np.ceil(abs(t) / base)))

    y_h = _rk4(M, y0, t, steps)
    for _ in range(cfg.max_halvings):
        y_h2 = _rk4(M, y0, t, steps * 2)
        estimate = np.linalg.norm(y_h - y_h2) / 15.0
        if estimate <= cfg.tol:
            return y_h2 + (y_h2 - y_h) / 15.0
        steps *= 2
        y_h = y_h2
    raise ConvergenceError(
        f"step halving exhausted ({cfg.max_halvings} halvings) before reaching "
        f"tolerance {cfg.tol:g}"
    )


def integro_direct(p: IntegroProblem, t: float, cfg: ReferenceConfig | None = None) -> np.ndarray:
    """c(t) for the memory problem via the augmented system.

    Integrates z' = [[A, B], [I, 0]] z from z(0) = (c0, 0) and returns the
    c block; the quadrature variable q(t) = integral of c carries the
    memory term exactly.
    """
    dim = p.dim
    M = np.zeros((2 * dim, 2 * dim))
    M[:dim, :dim] = p.A
    M[:dim, dim:] = p.B
    M[dim:, :dim] = np.eye(dim)
    z0 = np.concatenate([p.c0, np.zeros(dim)])
    z = reference_integrate(M, z0, t, cfg)
    return z[:dim]
