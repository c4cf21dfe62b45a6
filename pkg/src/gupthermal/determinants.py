"""Determinants of the cyclic (G_n) and open (H_n) tridiagonal families.

G_n carries ``2a`` on the diagonal and ``-b`` on the nearest-neighbour
bonds of a ring of ``n`` sites; H_n is the same chain without the closing
bond. Closed forms are written with

    S = sqrt(a + b) + sqrt(a - b),    D = sqrt(a + b) - sqrt(a - b) = 2b / S

and differences ``S^k - D^k`` are formed as ``S^k (1 - (D/S)^k)`` with
``expm1`` so that nothing cancels when ``a -> b``.

Ring convention for small n: every bond (i, i+1 mod n) contributes ``-b``
to both off-diagonal slots, so n = 2 has ``-2b`` off the diagonal and
n = 1 has the single entry ``2a - 2b``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .exceptions import DomainError


@dataclass(frozen=True)
class AbPair:
    a: float
    b: float

    def __post_init__(self):
        if not (self.a > self.b > 0):
            raise DomainError(f"need a > b > 0, got a={self.a!r}, b={self.b!r}")

    @property
    def s(self) -> float:
        return float(np.sqrt(self.a + self.b) + np.sqrt(self.a - self.b))

    @property
    def d(self) -> float:
        return 2.0 * self.b / self.s

    @property
    def root(self) -> float:
        """sqrt(a^2 - b^2)."""
        return float(np.sqrt((self.a - self.b) * (self.a + self.b)))


@dataclass(frozen=True)
class DetPair:
    det_g: float
    det_h_list: tuple


def as_pair(ab) -> AbPair:
    if isinstance(ab, AbPair):
        return ab
    a, b = ab
    return AbPair(float(a), float(b))


def _one_minus_ratio_pow(ab: AbPair, k: int) -> float:
    """1 - (D/S)^k, accurate when D/S is close to 1."""
    return -np.expm1(k * np.log(ab.d / ab.s))


def _check_n(n: int, minimum: int) -> None:
    if int(n) != n or n < minimum:
        raise DomainError(f"n must be an integer >= {minimum}, got {n!r}")


def det_G(ab, n: int) -> float:
    """det G_n = 2^-n (S^n - D^n)^2."""
    ab = as_pair(ab)
    _check_n(n, 1)
    diff = ab.s**n * _one_minus_ratio_pow(ab, n)
    return float(diff**2 / 2.0**n)


def _s_diff(ab: AbPair, k: int) -> float:
    # S^k - D^k for k >= 0; zero at k = 0
    if k == 0:
        return 0.0
    return ab.s**k * _one_minus_ratio_pow(ab, k)


def det_H(ab, n: int) -> float:
    """Closed-form determinant of the open chain H_n (det H_0 = 1)."""
    ab = as_pair(ab)
    _check_n(n, 0)
    if n == 0:
        return 1.0
    num = ab.a * _s_diff(ab, 2 * n) - ab.b**2 * _s_diff(ab, 2 * n - 2)
    return float(num / (2.0**n * ab.root))


def det_H_recursive(ab, n: int) -> float:
    """det H_n from det H_k = 2a det H_{k-1} - b^2 det H_{k-2}."""
    ab = as_pair(ab)
    _check_n(n, 0)
    prev, cur = 1.0, 2.0 * ab.a
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, 2.0 * ab.a * cur - ab.b**2 * prev
    return cur


def det_pair(ab, n: int) -> DetPair:
    ab = as_pair(ab)
    return DetPair(det_g=det_G(ab, n), det_h_list=tuple(det_H(ab, k) for k in range(n)))


def build_G(ab, n: int) -> np.ndarray:
    ab = as_pair(ab)
    _check_n(n, 1)
    g = np.zeros((n, n))
    for i in range(n):
        j = (i + 1) % n
        g[i, i] += 2.0 * ab.a
        g[i, j] -= ab.b
        g[j, i] -= ab.b
    return g


def build_H(ab, n: int) -> np.ndarray:
    ab = as_pair(ab)
    _check_n(n, 0)
    return (np.diag(np.full(n, 2.0 * ab.a))
            - np.diag(np.full(max(n - 1, 0), ab.b), 1)
            - np.diag(np.full(max(n - 1, 0), ab.b), -1))


def build_G_corner(ab, n: int, a_prime: float) -> np.ndarray:
    """G_n with the first diagonal entry replaced by 2 a'."""
    g = build_G(ab, n)
    g[0, 0] = 2.0 * a_prime
    return g


def build_G_two_sites(ab, n: int, a1: float, a2: float) -> np.ndarray:
    """G_n with diagonal entries 2 a1, 2 a2 on the first two sites."""
    g = build_G(ab, n)
    g[0, 0] = 2.0 * a1
    g[1, 1] = 2.0 * a2
    return g


def build_G_bond(ab, n: int, a1: float, b1: float) -> np.ndarray:
    """G_n with both ends of the first bond at 2 a1 and that bond at -b1."""
    _check_n(n, 3)
    g = build_G(ab, n)
    g[0, 0] = g[1, 1] = 2.0 * a1
    g[0, 1] = g[1, 0] = -b1
    return g


def lu_det(matrix) -> float:
    """Determinant from a partially pivoted LU factorization."""
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("lu_det needs a square matrix")
    if m.shape[0] == 0:
        return 1.0
    # a singular matrix is a legitimate input here; its determinant is 0
    with np.errstate(all="ignore"), warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        try:
            lu, piv = scipy.linalg.lu_factor(m, check_finite=True)
        except scipy.linalg.LinAlgError:
            return 0.0
    diag = np.diag(lu)
    if np.any(diag == 0):
        return 0.0
    sign = (-1.0) ** np.count_nonzero(piv != np.arange(len(piv)))
    return float(sign * np.prod(diag))


def det_G_perturbed_corner(ab, n: int, a_prime: float) -> float:
    """det of G_n with corner 2a': det G_n + 2 (a' - a) det H_{n-1}."""
    ab = as_pair(ab)
    _check_n(n, 2)
    return det_G(ab, n) + 2.0 * (a_prime - ab.a) * det_H(ab, n - 1)


def det_G_perturbed_two_sites(ab, n: int, a1: float, a2: float) -> float:
    ab = as_pair(ab)
    _check_n(n, 3)
    a, b = ab.a, ab.b
    h2, h3 = det_H(ab, n - 2), det_H(ab, n - 3)
    return (4.0 * (a1 - a) * (a2 - a) * h2
            + 4.0 * a * (a1 + a2 - 2.0 * a) * h2
            - 2.0 * b**2 * (a1 + a2 - 2.0 * a) * h3
            + det_G(ab, n))


def det_G_perturbed_bond(ab, n: int, a1: float, b1: float) -> float:
    ab = as_pair(ab)
    _check_n(n, 3)
    a, b = ab.a, ab.b
    h2, h3 = det_H(ab, n - 2), det_H(ab, n - 3)
    return ((4.0 * (a1 - a) * (a1 + a) - (b1 - b) * (b1 + b)) * h2
            - 4.0 * b**2 * (a1 - a) * h3
            - 2.0 * (b1 - b) * b ** (n - 1)
            + det_G(ab, n))
