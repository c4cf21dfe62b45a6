"""Brute-force spectrum of the thermal kernel as an integral operator.

The kernel is sampled on a quadrature grid and symmetrized with the
weights, ``M_ij = sqrt(w_i) rho_T[q_i, q_j] sqrt(w_j)``, so that the
eigenvalues of ``M`` approximate those of the operator. No closed form of
the spectrum is used here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .entropy import spectrum
from .exceptions import GridTooSmallError
from .model import GupParams, euclidean_kernel

SCHEMES = ("trapezoid", "gauss_legendre")
BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class GridSpec:
    half_width: float
    points: int = 400
    scheme: str = "trapezoid"

    def __post_init__(self):
        if not self.half_width > 0:
            raise ValueError("half_width must be positive")
        if self.points < 16:
            raise ValueError("need at least 16 quadrature points")
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}")
        if self.scheme == "trapezoid" and self.points % 2:
            raise ValueError("trapezoid grid needs an even number of points")

    def nodes_weights(self):
        L, n = self.half_width, self.points
        if self.scheme == "trapezoid":
            q = np.linspace(-L, L, n)
            w = np.full(n, q[1] - q[0])
            w[[0, -1]] *= 0.5
        else:
            t, w = np.polynomial.legendre.leggauss(n)
            q, w = L * t, L * w
        return q, w


@dataclass(frozen=True)
class SpectrumComparison:
    numeric: np.ndarray
    closed: np.ndarray
    abs_diff: np.ndarray

    @property
    def max_diff(self) -> float:
        return float(np.max(self.abs_diff))


def default_grid(params: GupParams) -> GridSpec:
    return GridSpec(half_width=10.0 * params.length_scale, points=400, scheme="trapezoid")


def discretize(params: GupParams, beta, grid: GridSpec | None = None) -> np.ndarray:
    grid = grid or default_grid(params)
    edge = euclidean_kernel(params, beta, grid.half_width, grid.half_width).amplitude
    if abs(edge) >= BOUNDARY_TOL:
        raise GridTooSmallError(
            f"grid-too-small: |rho_T(L, L)| = {abs(edge):.3g} at L = {grid.half_width:g}")
    q, w = grid.nodes_weights()
    sw = np.sqrt(w)
    k = euclidean_kernel(params, beta, q[:, None], q[None, :]).amplitude
    m = sw[:, None] * k * sw[None, :]
    return 0.5 * (m + m.T)


def eigenvalues(matrix) -> np.ndarray:
    """All eigenvalues of a symmetric matrix, largest first."""
    return scipy.linalg.eigvalsh(np.asarray(matrix, dtype=float))[::-1]


def compare_spectrum(params: GupParams, beta, grid: GridSpec | None = None,
                     n_compare: int = 5) -> SpectrumComparison:
    """Compare the leading ``n_compare`` numeric eigenvalues with the first-order spectrum."""
    closed = spectrum(params, beta, n_compare - 1)
    if closed.n_valid < n_compare - 1:
        raise ValueError(
            f"n_compare={n_compare} exceeds the perturbatively valid range (n <= {closed.n_valid})")
    numeric = eigenvalues(discretize(params, beta, grid))[:n_compare]
    return SpectrumComparison(numeric=numeric, closed=closed.lambdas,
                              abs_diff=np.abs(numeric - closed.lambdas))
