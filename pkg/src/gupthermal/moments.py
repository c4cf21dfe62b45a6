"""Gaussian moment integrals over exp(-X G_n X^T).

Closed forms are checked against :func:`wick_moment`, which applies
Isserlis' theorem to the covariance ``(1/2) G_n^{-1}``, and against
finite-difference derivatives of ``pi^{n/2} / sqrt(det)`` for perturbed
ring matrices (the ``*_by_differentiation`` helpers).

Indices are zero based. Cyclic sums run over the bonds ``(i, i+1 mod n)``,
so for ``n = 2`` each bond is visited twice.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import determinants as det
from .exceptions import DomainError


class MomentKind(enum.Enum):
    NORM = "norm"
    SUM_SQ = "sum_sq"
    CYCLIC_CROSS = "cyclic_cross"
    SUM_QUARTIC = "sum_quartic"
    CYCLIC_SQ_SQ = "cyclic_sq_sq"
    CYCLIC_CUBIC_CROSS = "cyclic_cubic_cross"


@dataclass(frozen=True)
class MomentResult:
    value: float
    n: int
    kind: MomentKind


def _check_n(n, minimum):
    if int(n) != n or n < minimum:
        raise DomainError(f"n must be an integer >= {minimum}, got {n!r}")


def g_norm(ab, n: int) -> float:
    """pi^{n/2} / sqrt(det G_n)."""
    ab = det.as_pair(ab)
    _check_n(n, 1)
    return float(np.pi ** (n / 2.0) / np.sqrt(det.det_G(ab, n)))


def moment_sum_sq(ab, n: int) -> float:
    """Integral of (x_1^2 + ... + x_n^2) exp(-X G_n X^T)."""
    ab = det.as_pair(ab)
    _check_n(n, 2)
    r = ab.d / ab.s
    coth_like = (1.0 + r**n) / -np.expm1(n * np.log(r))
    return g_norm(ab, n) * n / (4.0 * ab.root) * coth_like


def moment_cyclic_cross(ab, n: int) -> float:
    """Integral of (x_1 x_2 + ... + x_n x_1) exp(-X G_n X^T)."""
    ab = det.as_pair(ab)
    _check_n(n, 2)
    r = ab.d / ab.s
    ratio = (1.0 + r ** (n - 2)) / (ab.s**2 * -np.expm1(n * np.log(r)))
    return g_norm(ab, n) * n * ab.b / (2.0 * ab.root) * ratio


def moment_sum_quartic(ab, n: int) -> float:
    """Integral of (x_1^4 + ... + x_n^4) exp(-X G_n X^T)."""
    ab = det.as_pair(ab)
    _check_n(n, 2)
    dg = det.det_G(ab, n)
    return g_norm(ab, n) * 0.75 * n * det.det_H(ab, n - 1) ** 2 / dg**2


def moment_cyclic_sq_sq(ab, n: int) -> float:
    """Integral of (x_1^2 x_2^2 + ... + x_n^2 x_1^2) exp(-X G_n X^T)."""
    ab = det.as_pair(ab)
    _check_n(n, 3)
    a, b = ab.a, ab.b
    dg = det.det_G(ab, n)
    h2, h3 = det.det_H(ab, n - 2), det.det_H(ab, n - 3)
    bracket = (12.0 * a**2 * h2**2 - 12.0 * a * b**2 * h2 * h3
               + 3.0 * b**4 * h3**2 - 2.0 * h2 * dg)
    return g_norm(ab, n) * n / (4.0 * dg**2) * bracket


def moment_cyclic_cubic_cross(ab, n: int) -> float:
    """Integral of sum over bonds of x_i x_j (x_i^2 + x_j^2) exp(-X G_n X^T)."""
    ab = det.as_pair(ab)
    _check_n(n, 3)
    a, b = ab.a, ab.b
    dg = det.det_G(ab, n)
    h2, h3 = det.det_H(ab, n - 2), det.det_H(ab, n - 3)
    num = (b ** (n - 1) + b * h2) * (2.0 * a * h2 - b**2 * h3)
    return g_norm(ab, n) * 1.5 * n * num / dg**2


_CLOSED_FORMS = {
    MomentKind.NORM: g_norm,
    MomentKind.SUM_SQ: moment_sum_sq,
    MomentKind.CYCLIC_CROSS: moment_cyclic_cross,
    MomentKind.SUM_QUARTIC: moment_sum_quartic,
    MomentKind.CYCLIC_SQ_SQ: moment_cyclic_sq_sq,
    MomentKind.CYCLIC_CUBIC_CROSS: moment_cyclic_cubic_cross,
}


def moment(ab, n: int, kind) -> MomentResult:
    kind = MomentKind(kind)
    return MomentResult(value=_CLOSED_FORMS[kind](ab, n), n=n, kind=kind)


# --- Wick / Isserlis oracle -------------------------------------------------

def gaussian_normalization_and_covariance(ab, n: int):
    """Return (g_n, Sigma) with Sigma = (1/2) G_n^{-1}, both via dense LU."""
    ab = det.as_pair(ab)
    _check_n(n, 1)
    g = det.build_G(ab, n)
    lu, piv = scipy.linalg.lu_factor(g)
    sigma = 0.5 * scipy.linalg.lu_solve((lu, piv), np.eye(n))
    norm = np.pi ** (n / 2.0) / np.sqrt(det.lu_det(g))
    return float(norm), sigma


def _pairings_sum(cov, idx):
    if not idx:
        return 1.0
    first, rest = idx[0], idx[1:]
    total = 0.0
    for k in range(len(rest)):
        total += cov[first, rest[k]] * _pairings_sum(cov, rest[:k] + rest[k + 1:])
    return total


def isserlis(cov, monomial) -> float:
    """E[prod x_i^p] for a zero-mean Gaussian with covariance ``cov``."""
    idx = []
    for i, p in monomial:
        if p < 0:
            raise ValueError("powers must be non-negative")
        idx.extend([int(i)] * int(p))
    if len(idx) % 2:
        return 0.0
    if len(idx) > 4:
        raise ValueError("Wick oracle supports total degree <= 4")
    return float(_pairings_sum(cov, idx))


def wick_moment(ab, n: int, monomial) -> float:
    """Integral of a monomial against exp(-X G_n X^T) by Isserlis' theorem.

    ``monomial`` is a sequence of ``(index, power)`` pairs. Odd total degree
    gives exactly 0.
    """
    if sum(p for _, p in monomial) % 2:
        return 0.0
    g, cov = gaussian_normalization_and_covariance(ab, n)
    return g * isserlis(cov, monomial)


def _bonds(n):
    return [(i, (i + 1) % n) for i in range(n)]


def wick_sum(ab, n: int, kind) -> float:
    """The integrand sums of each :class:`MomentKind`, evaluated by Wick."""
    kind = MomentKind(kind)
    g, cov = gaussian_normalization_and_covariance(ab, n)
    if kind is MomentKind.NORM:
        terms = [[]]
    elif kind is MomentKind.SUM_SQ:
        terms = [[(i, 2)] for i in range(n)]
    elif kind is MomentKind.CYCLIC_CROSS:
        terms = [[(i, 1), (j, 1)] for i, j in _bonds(n)]
    elif kind is MomentKind.SUM_QUARTIC:
        terms = [[(i, 4)] for i in range(n)]
    elif kind is MomentKind.CYCLIC_SQ_SQ:
        terms = [[(i, 2), (j, 2)] for i, j in _bonds(n)]
    else:
        terms = [t for i, j in _bonds(n) for t in ([(i, 3), (j, 1)], [(i, 1), (j, 3)])]
    return g * sum(isserlis(cov, t) for t in terms)


# --- derivative routes --------------------------------------------------------
# Fourth-order central stencils. A plain three-point second difference at a
# 1e-5 relative step loses ~5 digits to roundoff; these stay below ~1e-7.
# Steps scale with the gap a - b, which sets how close det gets to zero.

DEFAULT_REL_STEP = 3e-3
_D1 = {-2: 1.0 / 12.0, -1: -8.0 / 12.0, 1: 8.0 / 12.0, 2: -1.0 / 12.0}
_D2 = {-2: -1.0 / 12.0, -1: 16.0 / 12.0, 0: -30.0 / 12.0, 1: 16.0 / 12.0, 2: -1.0 / 12.0}


def _gauss_norm_from_det(n, d):
    return np.pi ** (n / 2.0) / np.sqrt(d)


def _first(f, h):
    return sum(w * f(k * h) for k, w in _D1.items()) / h


def _second(f, h):
    return sum(w * f(k * h) for k, w in _D2.items()) / h**2


def _mixed(f, h1, h2):
    return sum(w1 * w2 * f(k1 * h1, k2 * h2)
               for k1, w1 in _D1.items() for k2, w2 in _D1.items()) / (h1 * h2)


def quartic_by_differentiation(ab, n: int, rel_step: float = DEFAULT_REL_STEP) -> float:
    """(1/4) d^2/da'^2 of pi^{n/2}/sqrt(det G~_n(a')) at a' = a; one site's x^4 moment."""
    ab = det.as_pair(ab)
    return 0.25 * _second(
        lambda t: _gauss_norm_from_det(n, det.det_G_perturbed_corner(ab, n, ab.a + t)),
        rel_step * (ab.a - ab.b))


def sq_sq_by_differentiation(ab, n: int, rel_step: float = DEFAULT_REL_STEP) -> float:
    """(1/4) d^2/da1 da2 at a1 = a2 = a; one bond's x_i^2 x_j^2 moment."""
    ab = det.as_pair(ab)
    h = rel_step * (ab.a - ab.b)
    return 0.25 * _mixed(
        lambda t1, t2: _gauss_norm_from_det(
            n, det.det_G_perturbed_two_sites(ab, n, ab.a + t1, ab.a + t2)),
        h, h)


def cubic_cross_by_differentiation(ab, n: int, rel_step: float = DEFAULT_REL_STEP) -> float:
    """-(1/4) d^2/da1 db1 at a1 = a, b1 = b; one bond's x_i x_j (x_i^2 + x_j^2) moment."""
    ab = det.as_pair(ab)
    return -0.25 * _mixed(
        lambda t1, t2: _gauss_norm_from_det(
            n, det.det_G_perturbed_bond(ab, n, ab.a + t1, ab.b + t2)),
        rel_step * (ab.a - ab.b), rel_step * (ab.a - ab.b))


def sum_sq_by_differentiation(ab, n: int, rel_step: float = DEFAULT_REL_STEP) -> float:
    """-(1/2) dg_n/da."""
    ab = det.as_pair(ab)
    return -0.5 * _first(lambda t: g_norm((ab.a + t, ab.b), n), rel_step * (ab.a - ab.b))


def cyclic_cross_by_differentiation(ab, n: int, rel_step: float = DEFAULT_REL_STEP) -> float:
    """(1/2) dg_n/db."""
    ab = det.as_pair(ab)
    return 0.5 * _first(lambda t: g_norm((ab.a, ab.b + t), n), rel_step * min(ab.b, ab.a - ab.b))
