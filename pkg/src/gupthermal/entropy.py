"""Tr rho^n, purity, spectrum, Renyi and von Neumann entropies.

All results are first order in alpha. Temperatures enter through
``x = hbar omega / (k_B T)``; with ``u = exp(-x)`` the alpha = 0 spectrum is
``(1 - u) u^n``. The expressions are written with ``expm1``/``log1p`` so
that the sweeps stay accurate from ``x ~ 1e-4`` (very hot) to ``x ~ 1e3``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.optimize

from . import determinants as det
from . import moments
from .exceptions import NoMaximumError, OrderOneError, PerturbativeWarning
from .model import GupParams, check_validity, coth_half, kernel_coefficients

ORDER_ONE_GUARD = 1e-8


@dataclass(frozen=True)
class SpectrumSlice:
    """lambda_0..lambda_N with the index range where the O(alpha) bracket is positive.

    ``n_valid`` is the largest index with a positive bracket (-1 if none).
    Entries past it are still returned; they lie outside the first-order
    regime.
    """

    lambdas: np.ndarray
    brackets: np.ndarray
    n_valid: int
    alpha_used: float

    @property
    def valid(self) -> np.ndarray:
        return self.lambdas[: self.n_valid + 1]


@dataclass(frozen=True)
class EntropyValue:
    """Entropy in nats, its O(alpha) part, and |O(alpha) part| / |alpha = 0 part|."""

    value: float | np.ndarray
    alpha_correction: float | np.ndarray
    validity_ratio: float | np.ndarray


@dataclass(frozen=True)
class TStar:
    temperature: float
    beta: float
    residual: float
    grid_argmax: float


def _out(v):
    v = np.asarray(v, dtype=float)
    return float(v) if v.ndim == 0 else v


def _ratio(corr, base):
    corr, base = np.abs(corr), np.abs(base)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(base > 0, corr / np.where(base > 0, base, 1.0), np.where(corr > 0, np.inf, 0.0))
    return _out(r)


def _one_minus_u(x):
    return -np.expm1(-x)


def _u_over_one_minus_u_sq(x):
    """e^-x / (1 - e^-x)^2 = 1 / (4 sinh^2(x/2))."""
    return np.exp(-x) / np.expm1(-x) ** 2


# --- Tr rho^n and purity ------------------------------------------------------

def trace_rho_n_parts(params: GupParams, beta, n: int):
    """Return (alpha = 0 value, relative O(alpha) bracket term) of Tr rho^n."""
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    x = params.x(beta)
    if np.any(x <= 0):
        raise ValueError("beta must be positive")
    base = _one_minus_u(x) ** n / _one_minus_u(n * x)
    corr = 0.75 * params.alpha * n * params.hmw * x * (coth_half(x) ** 2 - coth_half(n * x) ** 2)
    return base, corr


def trace_rho_n(params: GupParams, beta, n: int):
    """Tr rho_T^n = [2^{n-1} sinh^n(x/2) / sinh(nx/2)] [1 + (3 alpha n / 4) hbar m omega x (coth^2(x/2) - coth^2(nx/2))]."""
    base, corr = trace_rho_n_parts(params, beta, n)
    check_validity(corr, f"trace_rho_n(n={n})")
    return _out(base * (1.0 + corr))


def purity_parts(params: GupParams, T):
    """Return (tanh(x/2), relative O(alpha) term) of the purity at temperature ``T``."""
    x = params.x_from_temperature(T)
    base = _one_minus_u(x) / (1.0 + np.exp(-x))
    corr = 1.5 * params.alpha * params.hmw * x * (coth_half(x) ** 2 - coth_half(2.0 * x) ** 2)
    return _out(base), _out(corr)


def purity(params: GupParams, T):
    """Tr rho_T^2 at temperature ``T``."""
    base, corr = purity_parts(params, T)
    check_validity(corr, "purity")
    return _out(base * (1.0 + np.asarray(corr)))


def purity_high_temperature_limit(params: GupParams) -> float:
    """lim_{T -> inf} of the purity: (9/4) alpha hbar m omega."""
    return 2.25 * params.alpha * params.hmw


# --- spectrum -----------------------------------------------------------------

def h_coefficients(params: GupParams, beta, n):
    """First-order spectral weights h_n = 3 [e^-x / (1 - e^-x)^2 - n(n+1)/2]."""
    x = params.x(beta)
    n = np.asarray(n, dtype=float)
    return 3.0 * (_u_over_one_minus_u_sq(x) - n * (n + 1.0) / 2.0)


def moment_condition_rhs(params: GupParams, beta, k: int) -> float:
    """Right-hand side of sum_n e^{-nkx} h_n for positive integer ``k``."""
    x = params.x(beta)
    ek = _one_minus_u(k * x)
    return float(3.0 * _u_over_one_minus_u_sq(x) / ek + 3.0 / ek**2 - 3.0 / ek**3)


def spectrum(params: GupParams, beta, N: int) -> SpectrumSlice:
    if int(N) != N or N < 0:
        raise ValueError("N must be a non-negative integer")
    x = float(params.x(beta))
    if x <= 0:
        raise ValueError("beta must be positive")
    n = np.arange(N + 1, dtype=float)
    brackets = 1.0 + params.alpha * params.hmw * x * h_coefficients(params, beta, n)
    lambdas = _one_minus_u(x) * np.exp(-n * x) * brackets
    bad = np.flatnonzero(brackets <= 0)
    n_valid = int(bad[0]) - 1 if bad.size else N
    return SpectrumSlice(lambdas=lambdas, brackets=brackets, n_valid=n_valid, alpha_used=params.alpha)


# --- entropies ----------------------------------------------------------------

def von_neumann(params: GupParams, T) -> EntropyValue:
    x = params.x_from_temperature(T)
    u = np.exp(-x)
    om = _one_minus_u(x)
    base = -np.log1p(-u) + x * u / om
    corr = -3.0 * params.alpha * params.hmw * x**2 * u * (1.0 + u) / om**3
    ratio = _ratio(corr, base)
    check_validity(ratio, "von_neumann")
    return EntropyValue(_out(base + corr), _out(corr), ratio)


def _exprel_neg(t):
    """(1 - e^-t) / t, equal to 1 at t = 0."""
    t = np.asarray(t, dtype=float)
    safe = np.where(t == 0, 1.0, t)
    return np.where(t == 0, 1.0, -np.expm1(-safe) / safe)


def renyi(params: GupParams, T, gamma: float) -> EntropyValue:
    """Renyi entropy of real order ``gamma`` (``np.inf`` allowed).

    Both the alpha = 0 part and the O(alpha) difference quotient are
    rearranged so that nothing cancels as ``gamma -> 1``; orders within
    1e-8 of 1 are rejected in favour of :func:`von_neumann`.
    """
    if np.isinf(gamma) and gamma > 0:
        return renyi_inf(params, T)
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma!r}")
    delta = gamma - 1.0
    if abs(delta) < ORDER_ONE_GUARD:
        raise OrderOneError("Renyi order is 1 to within 1e-8; use von_neumann")

    x = params.x_from_temperature(T)
    u = np.exp(-x)
    om = _one_minus_u(x)
    # y = (u - u^gamma) / (1 - u), so that S0 = -ln(1-u) + log1p(y) / delta
    if delta > 0:
        y = -u * np.expm1(-delta * x) / om
    else:
        y = np.exp(-gamma * x) * np.expm1(delta * x) / om
    base = -np.log1p(-u) + np.log1p(y) / delta

    # (psi(gamma) - psi(1)) / (1 - gamma), psi(g) = e^{-gx} / (1 - e^{-gx})^2
    q = (x * np.exp(-min(gamma, 1.0) * x) * -np.expm1(-(1.0 + gamma) * x)
         * _exprel_neg(abs(delta) * x) / (np.expm1(-x) ** 2 * np.expm1(-gamma * x) ** 2))
    corr = -3.0 * params.alpha * gamma * params.hmw * x * q
    ratio = _ratio(corr, base)
    check_validity(ratio, f"renyi(gamma={gamma})")
    return EntropyValue(_out(base + corr), _out(corr), ratio)


def renyi_inf(params: GupParams, T) -> EntropyValue:
    """gamma -> infinity limit: -ln(1 - e^-x) - 3 alpha hbar m omega x e^-x / (1 - e^-x)^2.

    This is -ln lambda_0 expanded to first order in alpha.
    """
    x = params.x_from_temperature(T)
    base = -np.log1p(-np.exp(-x))
    corr = -3.0 * params.alpha * params.hmw * x * _u_over_one_minus_u_sq(x)
    ratio = _ratio(corr, base)
    check_validity(ratio, "renyi_inf")
    return EntropyValue(_out(base + corr), _out(corr), ratio)


def integer_renyi(params: GupParams, T, n: int) -> float:
    """ln(Tr rho^n) / (1 - n) for integer n >= 2."""
    if n < 2:
        raise ValueError("integer Renyi order must be >= 2")
    return _out(np.log(trace_rho_n(params, params.beta(T), n)) / (1.0 - n))


# --- entropy maximum ------------------------------------------------------------

def t_star_condition(params: GupParams, beta):
    """(1 - e^-x)^2 - 3 alpha hbar m omega [(x - 2) + 4x e^-x + (x + 2) e^-2x].

    Equal to -(dS/dx) (1 - e^-x)^4 / (x e^-x), so its zeros are the
    stationary points of the von Neumann entropy.
    """
    x = params.x(beta)
    u = np.exp(-x)
    bracket = 2.0 * np.expm1(-2.0 * x) + x * (1.0 + 4.0 * u + u * u)
    return _out(_one_minus_u(x) ** 2 - 3.0 * params.alpha * params.hmw * bracket)


def t_star(params: GupParams, x_range=(1e-6, 1e3), scan_points: int = 4000,
           xtol: float = 1e-12, maxiter: int = 200) -> TStar:
    """Temperature at which the first-order von Neumann entropy peaks.

    Scans ``beta`` geometrically over ``x_range / (hbar omega)`` for the first
    sign change from negative to positive (a maximum in T) and bisects it.
    A second, low-temperature sign change also exists for alpha > 0; it is a
    minimum produced by the breakdown of the expansion and is ignored.
    """
    hw = params.hbar * params.omega
    betas = np.geomspace(x_range[0], x_range[1], scan_points) / hw
    f = t_star_condition(params, betas)
    up = np.flatnonzero((f[:-1] < 0) & (f[1:] >= 0))
    if not up.size:
        raise NoMaximumError(
            f"no-maximum: entropy condition has no sign change for x in {x_range}")
    lo, hi = betas[up[0]], betas[up[0] + 1]
    beta_star = scipy.optimize.bisect(lambda b: t_star_condition(params, b), lo, hi,
                                      xtol=xtol / hw, maxiter=maxiter)
    t_root = 1.0 / (params.kb * beta_star)
    grid = np.geomspace(t_root / 10.0, t_root * 10.0, 10_000)
    with warnings.catch_warnings():
        # the hot end of this diagnostic grid is outside the first-order regime
        warnings.simplefilter("ignore", PerturbativeWarning)
        s = von_neumann(params, grid).value
    return TStar(temperature=t_root, beta=beta_star,
                 residual=t_star_condition(params, beta_star),
                 grid_argmax=float(grid[np.argmax(s)]))


# --- reassembly of Tr rho^n from the Gaussian integrals --------------------------

def assemble_trace_rho_n(params: GupParams, beta, n: int) -> float:
    """Tr rho^n rebuilt from kernel coefficients, determinants and moments.

    Expands every kernel of the ring to first order, integrates each
    polynomial term with the closed-form moments (Wick sums for the two
    bond-quartic terms at n = 2, where their closed forms need det H_{-1}),
    and keeps the result linear in alpha.
    """
    if int(n) != n or n < 2:
        raise ValueError("reassembly needs n >= 2")
    tp = kernel_coefficients(params, beta)
    ab = det.AbPair(float(tp.a), float(tp.b))
    g = moments.g_norm(ab, n)
    m_sq = moments.moment_sum_sq(ab, n)
    m_cross = moments.moment_cyclic_cross(ab, n)
    m_quart = moments.moment_sum_quartic(ab, n)
    if n >= 3:
        m_sqsq = moments.moment_cyclic_sq_sq(ab, n)
        m_cubic = moments.moment_cyclic_cubic_cross(ab, n)
    else:
        m_sqsq = moments.wick_sum(ab, n, moments.MomentKind.CYCLIC_SQ_SQ)
        m_cubic = moments.wick_sum(ab, n, moments.MomentKind.CYCLIC_CUBIC_CROSS)

    x = float(tp.x)
    u = np.exp(-x)
    sigma = -np.expm1(-2.0 * x) / 2.0
    mw = params.mass * params.omega
    # (m w / (2 pi hbar sinh x))^{n/2} / Z0^n with the e^x factors cancelled
    log_t0 = 0.5 * n * np.log(mw / (2.0 * np.pi * params.hbar * sigma)) + n * np.log1p(-u) + np.log(g)

    kernel_terms = (n * tp.A1 * g - 2.0 * tp.A2 * m_sq + 2.0 * tp.A3 * m_cross
                    + 2.0 * tp.B1 * m_quart + tp.B2 * m_cubic + tp.B3 * m_sqsq) / g
    z_terms = n * 0.75 * params.hmw * x * coth_half(x) ** 2
    return float(np.exp(log_t0) * (1.0 + params.alpha * (z_terms - kernel_terms)))
