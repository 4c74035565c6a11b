"""Generalized Tikhonov solves and the oracle sweep over the weight grid.

min_f ||K f - g||^2 + w ||A f||^2 via the normal equations, with an SVD
filter shortcut for A = I.  The sweep evaluates a log grid of candidate
parameters and returns the solution whose restoration error against a
supplied reference is smallest; this is the oracle rule used throughout
the experiments.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .discretization import DiscreteOperator
from .errors import IllPosedProblemError, ParameterError
from .metrics import rre

__all__ = [
    "TikhonovProblem",
    "AlphaGrid",
    "RegularizedSolution",
    "tikhonov_solve",
    "filter_solution",
    "alpha_sweep",
]

_KERNEL_TOL = 1e-12  # relative floor for eigmin(K'K + A'A)


@dataclass
class TikhonovProblem:
    """Forward operator, penalty operator and a data vector on one grid.

    Construction verifies ker(penalty) and ker(forward) intersect trivially:
    the smallest eigenvalue of K'K + A'A must clear a relative floor,
    otherwise no weight makes the normal equations solvable.
    """

    forward: DiscreteOperator
    penalty: DiscreteOperator
    data: np.ndarray

    def __post_init__(self):
        if self.forward.grid != self.penalty.grid:
            raise ParameterError(
                "forward and penalty operators live on different grids"
            )
        self.data = np.asarray(self.data, dtype=float)
        if self.data.shape != (self.forward.grid.n,):
            raise ParameterError("data length does not match the grid")
        K = np.asarray(self.forward.matrix, dtype=float)
        A = np.asarray(self.penalty.matrix, dtype=float)
        self._KtK = K.T @ K
        self._AtA = A.T @ A
        self._Ktg = K.T @ self.data
        M = self._KtK + self._AtA
        eigmin = float(np.linalg.eigvalsh(M)[0])
        scale = float(np.linalg.norm(M, 2))
        if eigmin <= _KERNEL_TOL * scale:
            raise IllPosedProblemError(
                "penalty and forward operator share a near-null direction"
            )


@dataclass(frozen=True)
class AlphaGrid:
    """count log-spaced candidates from max down to min, endpoints included."""

    max: float = 1e3
    min: float = 1e-6
    count: int = 50

    def __post_init__(self):
        if not (self.max > self.min > 0.0):
            raise ParameterError("need max > min > 0")
        if self.count < 1:
            raise ParameterError("need count >= 1")

    @property
    def values(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.max])
        return np.logspace(np.log10(self.max), np.log10(self.min), self.count)


@dataclass
class RegularizedSolution:
    solution: np.ndarray
    alpha: float
    residual_norm: float  # ||K f - g||
    penalty_norm: float  # ||A f||
    rre: float | None = None


def _solve_normal_equations(p: TikhonovProblem, weight: float) -> np.ndarray:
    M = p._KtK + weight * p._AtA
    # optimality bound: 1e-8 relative to the gradient data, plus the
    # backward-error floor eps*||M||*||f|| below which no float64 solve
    # can push the computed residual (the weight grid spans 18 decades,
    # so cond(M) routinely exceeds 1e10 at the edges)
    eps = np.finfo(float).eps
    norm_M = float(np.linalg.norm(M, "fro"))
    norm_Ktg = float(np.linalg.norm(p._Ktg))

    def optimal(f):
        gap = float(np.linalg.norm(M @ f - p._Ktg))
        return gap <= 1e-8 * norm_Ktg + 128.0 * eps * norm_M * float(np.linalg.norm(f))

    try:
        c, low = sla.cho_factor(M, check_finite=False)
        f = sla.cho_solve((c, low), p._Ktg, check_finite=False)
        if optimal(f):
            return f
    except sla.LinAlgError:
        pass
    # stacked least squares is slower but does not square the conditioning
    K = np.asarray(p.forward.matrix, dtype=float)
    A = np.asarray(p.penalty.matrix, dtype=float)
    top = np.vstack([K, np.sqrt(weight) * A])
    rhs = np.concatenate([p.data, np.zeros(A.shape[0])])
    f = np.linalg.lstsq(top, rhs, rcond=None)[0]
    if not optimal(f):
        raise IllPosedProblemError(
            f"normal equations unsolvable to tolerance at weight {weight:g}"
        )
    return f


def tikhonov_solve(p: TikhonovProblem, alpha: float) -> RegularizedSolution:
    """Minimizer of ||K f - g||^2 + alpha ||A f||^2, alpha the direct weight."""
    if not (alpha > 0.0):
        raise ParameterError("alpha must be positive")
    f = _solve_normal_equations(p, alpha)
    K = np.asarray(p.forward.matrix, dtype=float)
    A = np.asarray(p.penalty.matrix, dtype=float)
    return RegularizedSolution(
        solution=f,
        alpha=float(alpha),
        residual_norm=float(np.linalg.norm(K @ f - p.data)),
        penalty_norm=float(np.linalg.norm(A @ f)),
    )


def filter_solution(svd, g: np.ndarray, alpha: float) -> np.ndarray:
    """Identity-penalty solution from a precomputed SVD of K.

    Coefficients are s_i / (s_i^2 + alpha) against the left singular basis,
    i.e. the spectral filter t^2/(t^2 + alpha) applied to the naive inverse.
    """
    if not (alpha > 0.0):
        raise ParameterError("alpha must be positive")
    U, s, Vt = svd
    g = np.asarray(g, dtype=float)
    coef = s / (s**2 + alpha) * (U.T @ g)
    return Vt.T @ coef


def alpha_sweep(
    p: TikhonovProblem,
    grid: AlphaGrid,
    reference: np.ndarray,
    weight_rule: str = "squared",
):
    """Solve at every grid point, score by RRE against the reference.

    weight_rule "squared" passes alpha^2 as the normal-equation weight
    (each grid value acts like a standard-deviation-style parameter),
    "direct" passes alpha itself.  Returns (best solution, curve) where
    curve is the list of (alpha, rre) in grid order and ties go to the
    smallest alpha.
    """
    if weight_rule not in ("squared", "direct"):
        raise ParameterError(f"unknown weight rule {weight_rule!r}")
    reference = np.asarray(reference, dtype=float)
    alphas = grid.values
    curve = []
    sols = []
    for a in alphas:
        w = a**2 if weight_rule == "squared" else a
        sol = tikhonov_solve(p, w)
        sol.alpha = float(a)  # report the grid value, not the applied weight
        sol.rre = rre(sol.solution, reference)
        curve.append((float(a), sol.rre))
        sols.append(sol)
    errs = np.array([c[1] for c in curve])
    best_err = errs.min()
    tied = [i for i in range(len(sols)) if errs[i] == best_err]
    best = min(tied, key=lambda i: alphas[i])
    return sols[best], curve
