"""Acceptance criteria, one check per criterion at the stated tolerance.

Each check returns ``(passed, detail)`` and is timed against its runtime
budget. ``pytest`` prints a PASS/FAIL line per criterion in the terminal
summary; running this file directly prints the same lines.

Criterion 8 states an O(alpha^2) budget of ``3 (hbar m omega x) alpha^2``
for the gap between spectral power sums and Tr rho^k at alpha = 0.01. The
actual second-order gap is larger at x = 0.5 and x = 1 (it grows like
alpha^2 / x^2, not alpha^2 x), so that half is expected to fail; the exact
size of the gap is pinned down in tests/test_entropy.py.
"""

import time
import warnings

import numpy as np
import pytest

from gupthermal import determinants as det
from gupthermal import entropy, moments, spectral_oracle
from gupthermal.exceptions import NoMaximumError, PerturbativeWarning
from gupthermal.model import GupParams

AB_PAIRS = [(1.0, 0.5), (1.3, 0.2), (0.7, 0.65), (2.5, 1.0), (5.0, 4.9)]
RESULTS = {}


def rel(a, b):
    return abs(a - b) / abs(b)


def criterion_1():
    worst = 0.0
    for alpha in np.linspace(0.0, 0.05, 20):
        p = GupParams(alpha=alpha)
        for x in np.linspace(0.1, 20.0, 20):
            worst = max(worst, abs(entropy.trace_rho_n(p, x, 1) - 1.0))
    return worst <= np.finfo(float).eps, f"max |Tr rho - 1| = {worst:.1e}"


def criterion_2():
    worst = 0.0
    for a, b in AB_PAIRS:
        ab = det.AbPair(a, b)
        for n in range(1, 13):
            worst = max(worst, rel(det.det_G(ab, n), det.lu_det(det.build_G(ab, n))))
            worst = max(worst, rel(det.det_H(ab, n), det.lu_det(det.build_H(ab, n))))
            if n >= 2:
                worst = max(worst, rel(det.det_G_perturbed_corner(ab, n, 1.3 * a),
                                       det.lu_det(det.build_G_corner(ab, n, 1.3 * a))))
            if n >= 3:
                a1, a2, b1 = 1.2 * a, 0.9 * a, 1.1 * b
                worst = max(worst, rel(det.det_G_perturbed_two_sites(ab, n, a1, a2),
                                       det.lu_det(det.build_G_two_sites(ab, n, a1, a2))))
                worst = max(worst, rel(det.det_G_perturbed_bond(ab, n, a1, b1),
                                       det.lu_det(det.build_G_bond(ab, n, a1, b1))))
    return worst < 1e-10, f"max rel err vs LU = {worst:.1e}"


def criterion_3():
    closed = [
        (moments.MomentKind.NORM, moments.g_norm, 2),
        (moments.MomentKind.SUM_SQ, moments.moment_sum_sq, 2),
        (moments.MomentKind.CYCLIC_CROSS, moments.moment_cyclic_cross, 2),
        (moments.MomentKind.SUM_QUARTIC, moments.moment_sum_quartic, 2),
        (moments.MomentKind.CYCLIC_SQ_SQ, moments.moment_cyclic_sq_sq, 3),
        (moments.MomentKind.CYCLIC_CUBIC_CROSS, moments.moment_cyclic_cubic_cross, 3),
    ]
    routes = [
        (moments.moment_sum_quartic, moments.quartic_by_differentiation, 2),
        (moments.moment_cyclic_sq_sq, moments.sq_sq_by_differentiation, 3),
        (moments.moment_cyclic_cubic_cross, moments.cubic_cross_by_differentiation, 3),
    ]
    wick = fd = 0.0
    for ab in AB_PAIRS:
        for kind, func, n_min in closed:
            for n in range(n_min, 9):
                wick = max(wick, rel(func(ab, n), moments.wick_sum(ab, n, kind)))
        for func, route, n_min in routes:
            for n in range(n_min, 9):
                fd = max(fd, rel(n * route(ab, n), func(ab, n)))
    return wick < 1e-10 and fd < 1e-6, f"Wick {wick:.1e}, derivative routes {fd:.1e}"


def criterion_4():
    worst = 0.0
    for alpha in (0.0, 0.01):
        p = GupParams(alpha=alpha)
        for n in (2, 3, 4):
            for x in (0.5, 1.0, 2.0):
                worst = max(worst, rel(entropy.assemble_trace_rho_n(p, x, n), entropy.trace_rho_n(p, x, n)))
    return worst < 1e-9, f"max rel err = {worst:.1e}"


def criterion_5():
    errs = [abs(entropy.purity(GupParams(alpha=a), 1e4) - 9 * a / 4) for a in (0.04, 0.08)]
    return max(errs) < 1e-3, f"|P(1e4) - 9a/4| = {errs[0]:.1e}, {errs[1]:.1e}"


def criterion_6():
    T = np.geomspace(0.05, 100, 500)
    s0 = entropy.von_neumann(GupParams(), T).value
    monotone = bool(np.all(np.diff(s0) >= 0))
    p = GupParams(alpha=0.01)
    s1 = entropy.von_neumann(p, T).value
    i = int(np.argmax(s1))
    interior = 0 < i < len(T) - 1
    ts = entropy.t_star(p)
    within = interior and T[i - 1] <= ts.temperature <= T[i + 1]
    ok = monotone and interior and within and abs(ts.residual) < 1e-10
    return ok, (f"monotone={monotone}, argmax T={T[i]:.4f}, T*={ts.temperature:.4f}, "
                f"residual={ts.residual:.1e}")


def criterion_7():
    T = np.geomspace(0.05, 100, 500)
    s = {g: entropy.renyi(GupParams(), T, g).value for g in (0.8, 1.8, np.inf)}
    ordered = bool(np.all(s[0.8] >= s[1.8]) and np.all(s[1.8] >= s[np.inf]))
    p = GupParams(alpha=0.01)
    r = {g: entropy.renyi(p, T, g).value for g in (0.8, 1.8, np.inf)}
    rev = (r[0.8] < r[1.8]) & (r[1.8] < r[np.inf]) & (T > 5)
    first = f"{T[np.argmax(rev)]:.3f}" if rev.any() else "none"
    return ordered and bool(rev.any()), f"alpha=0 ordered={ordered}, first reversal at T={first}"


def _power_sum_gaps(alpha):
    p = GupParams(alpha=alpha)
    out = {}
    for x in (0.5, 1.0, 2.0):
        sp = entropy.spectrum(p, x, int(np.ceil(40.0 / x)) + 20)
        for k in (2, 3):
            out[(x, k)] = abs(np.sum(sp.valid**k) - entropy.trace_rho_n(p, x, k))
    return out


def criterion_8_exact():
    gaps = _power_sum_gaps(0.0)
    worst_gap = max(gaps.values())
    worst_series = 0.0
    p = GupParams()
    for x in (0.5, 1.0, 2.0):
        n = np.arange(600)
        for k in range(1, 6):
            lhs = np.sum(np.exp(-n * k * x) * entropy.h_coefficients(p, x, n))
            rhs = entropy.moment_condition_rhs(p, x, k)
            worst_series = max(worst_series, abs(lhs - rhs) / max(1.0, abs(rhs)))
    ok = worst_gap < 1e-10 and worst_series < 1e-10
    return ok, f"alpha=0 gap {worst_gap:.1e}, moment-condition series {worst_series:.1e}"


def criterion_8_budget():
    alpha = 0.01
    gaps = _power_sum_gaps(alpha)
    over = [(x, k, g, 3 * x * alpha**2 + 1e-8) for (x, k), g in gaps.items() if g >= 3 * x * alpha**2 + 1e-8]
    detail = "all within budget" if not over else "; ".join(
        f"x={x:g} k={k}: {g:.1e} > {b:.1e}" for x, k, g, b in over)
    return not over, detail


def criterion_9():
    cmp0 = spectral_oracle.compare_spectrum(GupParams(), 1.0, None, 6)
    cmp1 = spectral_oracle.compare_spectrum(GupParams(alpha=0.005), 1.0, None, 5)
    return cmp0.max_diff < 1e-6 and cmp1.max_diff < 5e-4, (
        f"alpha=0 {cmp0.max_diff:.1e}, alpha=0.005 {cmp1.max_diff:.1e}")


def criterion_10():
    worst = 0.0
    for alpha in (0.0, 0.01):
        p = GupParams(alpha=alpha)
        for x in (0.5, 1.0, 2.0):
            s1 = entropy.von_neumann(p, 1 / x).value
            for g in (1 - 1e-4, 1 + 1e-4):
                worst = max(worst, abs(entropy.renyi(p, 1 / x, g).value - s1))
    return worst < 1e-3, f"max |S_(1+-1e-4) - S_vN| = {worst:.1e}"


CRITERIA = [
    ("1", "normalization Tr rho = 1", criterion_1, 1.0),
    ("2", "determinant closed forms vs LU", criterion_2, 1.0),
    ("3", "moment closed forms vs Wick and derivative routes", criterion_3, 2.0),
    ("4", "Tr rho^n vs Gaussian-integral reassembly", criterion_4, 1.0),
    ("5", "purity high-temperature limit 9 alpha / 4", criterion_5, 1.0),
    ("6", "von Neumann monotone at alpha=0, maximum at T_*", criterion_6, 1.0),
    ("7", "Renyi ordering and its high-T reversal", criterion_7, 1.0),
    ("8a", "power sums exact at alpha=0, moment-condition series", criterion_8_exact, 1.0),
    ("8b", "power sums within 3 (hbar m omega x) alpha^2 + 1e-8 at alpha=0.01", criterion_8_budget, 1.0),
    ("9", "quadrature eigenvalues vs spectrum", criterion_9, 30.0),
    ("10", "Renyi -> von Neumann as gamma -> 1", criterion_10, 1.0),
]


def evaluate(label, func, budget):
    start = time.perf_counter()
    try:
        ok, detail = func()
    except (ArithmeticError, ValueError, NoMaximumError) as exc:
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    ok = bool(ok) and elapsed < budget
    line = f"criterion {label:>3}: {'PASS' if ok else 'FAIL'}  ({elapsed:.2f} s / {budget:g} s)  {detail}"
    RESULTS[label] = line
    return ok, line


EXPECTED_TO_FAIL = {"8b"}


@pytest.mark.parametrize(
    "label, name, func, budget",
    [pytest.param(*c, id=f"criterion_{c[0]}",
                  marks=[pytest.mark.xfail(strict=True, reason="stated alpha^2 budget is smaller than the "
                                           "true second-order gap at x = 0.5, 1")]
                  if c[0] in EXPECTED_TO_FAIL else [])
     for c in CRITERIA])
def test_criterion(label, name, func, budget):
    ok, line = evaluate(label, func, budget)
    print(line)
    assert ok, line


if __name__ == "__main__":
    warnings.simplefilter("ignore", PerturbativeWarning)
    for label, name, func, budget in CRITERIA:
        print(f"{evaluate(label, func, budget)[1]}    [{name}]")
