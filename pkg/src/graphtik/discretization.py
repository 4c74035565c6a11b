"""Two discretizations of a compact integral operator on (0, 1).

The first one never touches the kernel: it assembles a lattice Schrodinger
matrix L = h^-2 * T + diag(q) whose Toeplitz part T carries the long-range
stencil t[0] = pi^2/3, t[k] = (-1)^k * 2/k^2, and inverts it.  Its spectrum
converges to the continuous one uniformly in the eigenvalue index, which is
the property the experiments quantify.  The second is the standard Galerkin
projection onto orthonormal box functions, kept as the comparison baseline.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.linalg as sla

from .errors import (
    ContractViolationError,
    EvaluationError,
    NumericalError,
    ParameterError,
    UnsupportedProblemError,
)

__all__ = [
    "ContinuousProblem",
    "Grid",
    "DiscreteOperator",
    "SpectralDecomposition",
    "toeplitz_stencil",
    "build_schrodinger_operator",
    "pseudo_inverse",
    "build_galerkin_operator",
    "project_function",
    "reconstruct_function",
    "symmetric_eigendecomposition",
    "continuous_eigenvalues",
]


@dataclass(frozen=True)
class ContinuousProblem:
    """An integral operator with kernel h plus the potential of its inverse.

    eigenvalue_law, when present, maps an integer array m to the pair
    (lambda_m, delta_m) of operator and inverse-operator eigenvalue
    magnitudes, with lambda_m * delta_m = 1.
    forward_oracle, when present, maps (f_id, x) to the closed-form image
    of test function f_id under the operator; it raises KeyError for
    unregistered ids.
    """

    kernel: Callable
    potential: Callable
    eigenvalue_law: Callable | None = None
    forward_oracle: Callable | None = None


@dataclass(frozen=True)
class Grid:
    """n nodes in (0, 1), either lattice convention.

    interior: x_i = i/(n+1), i = 1..n (spacing 1/(n+1))
    midpoint: x_i = (i - 1/2)/n, i = 1..n (cell centers, width 1/n)
    """

    n: int
    convention: str = "interior"

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError("grid needs n >= 1")
        if self.convention not in ("interior", "midpoint"):
            raise ParameterError(f"unknown grid convention {self.convention!r}")

    @property
    def nodes(self) -> np.ndarray:
        i = np.arange(1, self.n + 1, dtype=float)
        if self.convention == "interior":
            return i / (self.n + 1)
        return (i - 0.5) / self.n

    @property
    def spacing(self) -> float:
        return 1.0 / (self.n + 1) if self.convention == "interior" else 1.0 / self.n


@dataclass(frozen=True)
class DiscreteOperator:
    """A dense matrix acting on functions sampled on a grid."""

    matrix: np.ndarray
    grid: Grid
    tag: str  # graph | galerkin | penalty | derived

    def __post_init__(self):
        m = np.asarray(self.matrix)
        if m.shape != (self.grid.n, self.grid.n):
            raise ContractViolationError(
                f"matrix shape {m.shape} does not match grid size {self.grid.n}"
            )


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray  # orthonormal columns
    residual: float  # max_k ||A v_k - lam_k v_k||_2


def toeplitz_stencil(n: int) -> np.ndarray:
    """First row of the long-range difference stencil, t[k] = (-1)^k 2/k^2."""
    if n < 1:
        raise ParameterError("stencil needs n >= 1")
    t = np.empty(n)
    t[0] = np.pi**2 / 3.0
    k = np.arange(1, n, dtype=float)
    t[1:] = (-1.0) ** np.arange(1, n) * 2.0 / k**2
    return t


def build_schrodinger_operator(q: Callable, n: int) -> DiscreteOperator:
    """L = h^-2 * ToeplitzSym(t) + diag(q) on the interior lattice.

    The lattice spacing is h = 1/(n+1), so the stencil block is scaled by
    (n+1)^2.  This is what makes the inverse spectrum land on the continuous
    eigenvalues to O(1/n) uniformly in the index.
    """
    grid = Grid(n, "interior")
    qx = np.asarray(q(grid.nodes), dtype=float)
    if qx.shape == ():
        qx = np.full(n, float(qx))
    if qx.shape != (n,) or not np.all(np.isfinite(qx)):
        raise EvaluationError("potential not finite on all grid nodes")
    L = (n + 1) ** 2 * sla.toeplitz(toeplitz_stencil(n)) + np.diag(qx)
    return DiscreteOperator(L, grid, "graph")


def pseudo_inverse(op: DiscreteOperator, rel_tol: float = 1e-12) -> DiscreteOperator:
    """Moore-Penrose pseudoinverse by SVD, singular values below
    rel_tol * sigma_max treated as zero."""
    try:
        U, s, Vt = np.linalg.svd(np.asarray(op.matrix, dtype=float))
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD failed on {op.tag!r} operator") from exc
    cutoff = rel_tol * (s[0] if s.size else 0.0)
    s_inv = np.zeros_like(s)
    keep = s > cutoff
    s_inv[keep] = 1.0 / s[keep]
    K = (Vt.T * s_inv) @ U.T
    return DiscreteOperator(K, op.grid, op.tag if op.tag == "graph" else "derived")


def _gauss_cells(n: int, quad_points: int):
    gx, gw = np.polynomial.legendre.leggauss(quad_points)
    mids = (np.arange(n) + 0.5) / n
    half = 0.5 / n
    nodes = mids[:, None] + half * gx[None, :]  # (n, q) nodes per cell
    return mids, half, gx, gw, nodes, half * gw


def build_galerkin_operator(
    p: ContinuousProblem, n: int, quad_points: int = 8
) -> DiscreteOperator:
    """Box-function Galerkin matrix, entries n * int int_{cell_i x cell_j} h.

    Tensor Gauss-Legendre per cell pair; diagonal cells are split at y = x
    because the kernels of interest have a kink there.
    """
    if quad_points < 4:
        raise ParameterError("quad_points must be >= 4")
    _, half, gx, gw, nodes, w = _gauss_cells(n, quad_points)
    flat = nodes.reshape(-1)
    K = np.empty((n, n))
    q = quad_points
    chunk = max(1, 4_000_000 // max(1, n * q * q))
    for i0 in range(0, n, chunk):
        i1 = min(n, i0 + chunk)
        H = p.kernel(
            nodes[i0:i1].reshape(-1, 1), flat.reshape(1, -1)
        ).reshape(i1 - i0, q, n, q)
        if not np.all(np.isfinite(H)):
            raise EvaluationError("kernel not finite inside a quadrature cell")
        K[i0:i1] = np.einsum("a,b,iajb->ij", w, w, H) * n
    # redo the diagonal with the inner integral split at the kink y = x
    mids = (np.arange(n) + 0.5) / n
    for i in range(n):
        xs = mids[i] + half * gx
        blo, bhi = mids[i] - half, mids[i] + half
        acc = 0.0
        for xa, wa in zip(xs, half * gw):
            h1 = 0.5 * (xa - blo)
            h2 = 0.5 * (bhi - xa)
            y1 = blo + h1 * (gx + 1.0)
            y2 = xa + h2 * (gx + 1.0)
            acc += wa * (
                h1 * np.dot(gw, np.asarray(p.kernel(xa, y1), dtype=float))
                + h2 * np.dot(gw, np.asarray(p.kernel(xa, y2), dtype=float))
            )
        K[i, i] = acc * n
    return DiscreteOperator(K, Grid(n, "midpoint"), "galerkin")


def project_function(f: Callable, grid: Grid) -> np.ndarray:
    """Samples on the interior lattice; box-basis coefficients f(x_i)/sqrt(n)
    on the midpoint grid."""
    vals = np.asarray(f(grid.nodes), dtype=float)
    if grid.convention == "midpoint":
        return vals / np.sqrt(grid.n)
    return vals


def reconstruct_function(coef: np.ndarray, grid: Grid) -> np.ndarray:
    """Inverse of project_function: point values at the grid nodes."""
    coef = np.asarray(coef, dtype=float)
    if grid.convention == "midpoint":
        return coef * np.sqrt(grid.n)
    return coef


def symmetric_eigendecomposition(op: DiscreteOperator) -> SpectralDecomposition:
    A = np.asarray(op.matrix, dtype=float)
    if A.size and np.max(np.abs(A - A.T)) > 1e-12:
        raise ContractViolationError("matrix is not symmetric to 1e-12")
    A = 0.5 * (A + A.T)
    try:
        lam, V = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigendecomposition failed on {op.tag!r}") from exc
    residual = float(np.max(np.linalg.norm(A @ V - V * lam, axis=0))) if A.size else 0.0
    defect = float(np.max(np.abs(V.T @ V - np.eye(A.shape[0])))) if A.size else 0.0
    scale = float(np.max(np.abs(A))) if A.size else 0.0
    if defect > 1e-10 or residual > 1e-8 * max(scale, 1e-300):
        raise NumericalError("eigendecomposition does not meet its accuracy contract")
    return SpectralDecomposition(lam, V, residual)


def continuous_eigenvalues(p: ContinuousProblem, count: int) -> np.ndarray:
    """lambda_1..lambda_count from the problem's registered eigenvalue law."""
    if count < 0:
        raise ParameterError("count must be >= 0")
    if count == 0:
        return np.empty(0)
    if p.eigenvalue_law is None:
        raise UnsupportedProblemError("problem has no registered eigenvalue law")
    lam, _ = p.eigenvalue_law(np.arange(1, count + 1))
    return np.asarray(lam, dtype=float)
