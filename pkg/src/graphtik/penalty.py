"""Penalty operators for the regularized inversion.

Besides the identity and the two classical second-difference matrices
(Dirichlet and Neumann flavors) this builds a graph Laplacian whose edge
weights come straight from the observed data: nearby samples with similar
values get strong edges, so the penalty is cheap to pay exactly where the
data says the signal is smooth.  A matched variant adds the diagonal
potential that puts a known anchor vector in the operator's kernel.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .discretization import DiscreteOperator, Grid
from .errors import DegenerateAnchorError, ParameterError

__all__ = [
    "SimilarityParams",
    "PenaltySpec",
    "dirichlet_penalty",
    "neumann_penalty",
    "similarity_weights",
    "data_graph_laplacian",
    "kernel_matched_penalty",
]


@dataclass(frozen=True)
class SimilarityParams:
    """Neighborhood radius r (in lattice steps) and Gaussian width sigma."""

    r: int
    sigma: float

    def validate(self, n: int) -> None:
        if not (1 <= self.r <= n):
            raise ParameterError(f"radius r={self.r} outside 1..{n}")
        if not (self.sigma > 0.0):
            raise ParameterError("sigma must be positive")


@dataclass(frozen=True)
class PenaltySpec:
    """kind in {identity, dirichlet_laplacian, neumann_laplacian, data_graph,
    kernel_matched}; params required for the data-driven kinds; anchor
    (all entries nonzero) required for kernel_matched."""

    kind: str
    params: SimilarityParams | None = None
    anchor: np.ndarray | None = None

    def __post_init__(self):
        kinds = (
            "identity",
            "dirichlet_laplacian",
            "neumann_laplacian",
            "data_graph",
            "kernel_matched",
        )
        if self.kind not in kinds:
            raise ParameterError(f"unknown penalty kind {self.kind!r}")
        if self.kind in ("data_graph", "kernel_matched") and self.params is None:
            raise ParameterError(f"{self.kind} needs SimilarityParams")
        if self.kind == "kernel_matched":
            if self.anchor is None or np.any(np.asarray(self.anchor) == 0.0):
                raise DegenerateAnchorError("kernel_matched needs a nowhere-zero anchor")


def dirichlet_penalty(n: int) -> DiscreteOperator:
    """tridiag(-1, 2, -1)."""
    if n < 2:
        raise ParameterError("n must be >= 2")
    t = np.zeros(n)
    t[0], t[1] = 2.0, -1.0
    return DiscreteOperator(sla.toeplitz(t), Grid(n, "interior"), "penalty")


def neumann_penalty(n: int) -> DiscreteOperator:
    """tridiag(-1, 2, -1) with the corner diagonal entries lowered to 1,
    so constants are in the kernel."""
    A = dirichlet_penalty(n).matrix.copy()
    A[0, 0] = 1.0
    A[-1, -1] = 1.0
    return DiscreteOperator(A, Grid(n, "interior"), "penalty")


def similarity_weights(g_eps: np.ndarray, p: SimilarityParams) -> np.ndarray:
    """W_ij = exp(-(g_i - g_j)^2 / sigma^2) for 0 < |i - j| <= r, else 0."""
    g = np.asarray(g_eps, dtype=float)
    n = g.size
    p.validate(n)
    i = np.arange(n)
    band = np.abs(i[:, None] - i[None, :]) <= p.r
    W = np.where(band, np.exp(-np.subtract.outer(g, g) ** 2 / p.sigma**2), 0.0)
    np.fill_diagonal(W, 0.0)
    return W


def data_graph_laplacian(g_eps: np.ndarray, p: SimilarityParams) -> DiscreteOperator:
    """D - W with D the diagonal of row sums of the similarity weights."""
    W = similarity_weights(g_eps, p)
    A = np.diag(W.sum(axis=1)) - W
    return DiscreteOperator(A, Grid(W.shape[0], "interior"), "penalty")


def kernel_matched_penalty(delta: DiscreteOperator, anchor: np.ndarray) -> DiscreteOperator:
    """delta + diag(kappa) with kappa_i = -(delta @ anchor)_i / anchor_i.

    The added potential is the minimal diagonal modification that makes the
    anchor an exact null vector of the result.
    """
    anchor = np.asarray(anchor, dtype=float)
    if np.any(anchor == 0.0):
        raise DegenerateAnchorError("anchor has a zero entry")
    D = np.asarray(delta.matrix, dtype=float)
    kappa = -(D @ anchor) / anchor
    return DiscreteOperator(D + np.diag(kappa), delta.grid, "penalty")
