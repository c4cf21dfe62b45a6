"""Oracle suites run by ``gupthermal verify``.

Each check compares a closed form with an independent route (dense LU,
recursion, Wick sums, finite differences, series, quadrature eigenvalues)
and records the worst relative or absolute error seen.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass

import numpy as np

from . import determinants as det
from . import entropy, moments, spectral_oracle
from .model import GupParams

AB_PAIRS = [(1.0, 0.5), (1.3, 0.2), (0.7, 0.65), (2.5, 1.0), (5.0, 4.9)]


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    max_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.max_error) and self.max_error < self.tolerance)


def _rel(a, b):
    return abs(a - b) / abs(b)


def _mixed(a, b):
    return abs(a - b) / max(1.0, abs(b))


@contextlib.contextmanager
def scaled_det_h(scale: float):
    """Temporarily multiply the closed-form det H_n by ``scale`` (sensitivity testing)."""
    if scale == 1.0:
        yield
        return
    original = det.det_H
    det.det_H = lambda ab, n: original(ab, n) * scale
    try:
        yield
    finally:
        det.det_H = original


def _sqrt_det_g(ab, k):
    # the ring closed form vanishes at k = 0
    return 0.0 if k == 0 else np.sqrt(det.det_G(ab, k))


def determinant_checks(n_max: int) -> list[Check]:
    err = {"ring": 0.0, "chain_recursion": 0.0, "chain_from_ring": 0.0,
           "corner": 0.0, "two_sites": 0.0, "bond": 0.0}
    for a, b in AB_PAIRS:
        ab = det.AbPair(a, b)
        for n in range(1, n_max + 1):
            err["ring"] = max(err["ring"], _rel(det.det_G(ab, n), det.lu_det(det.build_G(ab, n))))
            err["chain_recursion"] = max(err["chain_recursion"],
                                         _rel(det.det_H(ab, n), det.det_H_recursive(ab, n)))
            lhs = det.det_H(ab, n) * ab.root
            rhs = a * _sqrt_det_g(ab, 2 * n) - 0.5 * b**2 * _sqrt_det_g(ab, 2 * n - 2)
            err["chain_from_ring"] = max(err["chain_from_ring"], _rel(lhs, rhs))
            if n >= 2:
                ap = 1.3 * a
                err["corner"] = max(err["corner"], _rel(
                    det.det_G_perturbed_corner(ab, n, ap), det.lu_det(det.build_G_corner(ab, n, ap))))
            if n >= 3:
                a1, a2, b1 = 1.2 * a, 0.9 * a, 1.1 * b
                err["two_sites"] = max(err["two_sites"], _rel(
                    det.det_G_perturbed_two_sites(ab, n, a1, a2),
                    det.lu_det(det.build_G_two_sites(ab, n, a1, a2))))
                err["bond"] = max(err["bond"], _rel(
                    det.det_G_perturbed_bond(ab, n, a1, b1), det.lu_det(det.build_G_bond(ab, n, a1, b1))))
    names = {
        "ring": "ring determinant closed form vs LU",
        "chain_recursion": "open-chain determinant closed form vs three-term recursion",
        "chain_from_ring": "open-chain determinant from ring determinants of order 2n, 2n-2",
        "corner": "corner-perturbed ring determinant vs LU",
        "two_sites": "two-site perturbed ring determinant vs LU",
        "bond": "bond-perturbed ring determinant vs LU",
    }
    return [Check("determinants", names[k], v, 1e-10) for k, v in err.items()]


def moment_checks(n_max: int) -> list[Check]:
    kinds = [
        (moments.MomentKind.NORM, 1),
        (moments.MomentKind.SUM_SQ, 2),
        (moments.MomentKind.CYCLIC_CROSS, 2),
        (moments.MomentKind.SUM_QUARTIC, 2),
        (moments.MomentKind.CYCLIC_SQ_SQ, 3),
        (moments.MomentKind.CYCLIC_CUBIC_CROSS, 3),
    ]
    out = []
    for kind, n_min in kinds:
        worst = 0.0
        for ab in AB_PAIRS:
            for n in range(n_min, n_max + 1):
                worst = max(worst, _rel(moments.moment(ab, n, kind).value, moments.wick_sum(ab, n, kind)))
        out.append(Check("moments", f"{kind.value} closed form vs Wick", worst, 1e-10))

    routes = [
        ("sum_quartic", moments.moment_sum_quartic, moments.quartic_by_differentiation, 2),
        ("cyclic_sq_sq", moments.moment_cyclic_sq_sq, moments.sq_sq_by_differentiation, 3),
        ("cyclic_cubic_cross", moments.moment_cyclic_cubic_cross, moments.cubic_cross_by_differentiation, 3),
    ]
    for label, closed, route, n_min in routes:
        worst = 0.0
        for ab in AB_PAIRS:
            for n in range(n_min, n_max + 1):
                worst = max(worst, _rel(n * route(ab, n), closed(ab, n)))
        out.append(Check("moments", f"{label} vs perturbed-determinant derivative", worst, 1e-6))
    return out


def trace_checks() -> list[Check]:
    out = []
    worst = 0.0
    for alpha in (0.0, 0.01):
        p = GupParams(alpha=alpha)
        for n in (2, 3, 4):
            for x in (0.5, 1.0, 2.0):
                worst = max(worst, _rel(entropy.assemble_trace_rho_n(p, x, n), entropy.trace_rho_n(p, x, n)))
    out.append(Check("trace", "Tr rho^n closed form vs Gaussian-integral reassembly", worst, 1e-9))

    worst = 0.0
    for alpha in np.linspace(0.0, 0.05, 20):
        p = GupParams(alpha=alpha)
        for x in np.linspace(0.1, 20.0, 20):
            worst = max(worst, abs(entropy.trace_rho_n(p, x, 1) - 1.0))
    out.append(Check("trace", "normalization Tr rho = 1", worst, 1e-15))

    worst = 0.0
    p = GupParams(alpha=0.0)
    for x in (0.5, 1.0, 2.0):
        lam = entropy.spectrum(p, x, int(np.ceil(40.0 / x)) + 20).lambdas
        for k in (2, 3):
            worst = max(worst, abs(np.sum(lam**k) - entropy.trace_rho_n(p, x, k)))
    out.append(Check("trace", "alpha=0 spectrum power sums vs Tr rho^k", worst, 1e-10))

    worst = 0.0
    for x in (0.5, 1.0, 2.0):
        n = np.arange(400)
        h = entropy.h_coefficients(p, x, n)
        for k in range(1, 6):
            worst = max(worst, _mixed(np.sum(np.exp(-n * k * x) * h), entropy.moment_condition_rhs(p, x, k)))
    out.append(Check("trace", "spectral weight moment condition", worst, 1e-10))
    return out


def spectral_checks() -> list[Check]:
    out = []
    p0 = GupParams(alpha=0.0)
    cmp0 = spectral_oracle.compare_spectrum(p0, 1.0, None, 6)
    out.append(Check("spectral", "quadrature eigenvalues vs Boltzmann weights (alpha=0)", cmp0.max_diff, 1e-6))
    p1 = GupParams(alpha=0.005)
    cmp1 = spectral_oracle.compare_spectrum(p1, 1.0, None, 5)
    out.append(Check("spectral", "quadrature eigenvalues vs first-order spectrum (alpha=0.005)",
                     cmp1.max_diff, 5e-4))
    return out


def run(level: str = "quick", det_h_scale: float = 1.0) -> list[Check]:
    if level not in ("quick", "full"):
        raise ValueError("level must be 'quick' or 'full'")
    n_max = 6 if level == "quick" else 12
    with scaled_det_h(det_h_scale):
        checks = determinant_checks(n_max) + moment_checks(min(n_max, 8)) + trace_checks()
        if level == "full":
            checks += spectral_checks()
    return checks
