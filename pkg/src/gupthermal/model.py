"""Physical parameters, propagators, thermal kernel and partition function.

Everything here is first order in the GUP parameter ``alpha``. The thermal
branch is real valued; complex arithmetic is only used by
:func:`real_time_propagator`.

Hyperbolic functions of ``x = hbar * omega * beta`` are evaluated through
``u = exp(-x)`` scaled forms (``sinh x = e^x (1 - u^2) / 2`` and so on) so
that very low temperatures do not overflow.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .exceptions import CausticError, PerturbativeWarning

VALIDITY_WARN_THRESHOLD = 0.5
CAUSTIC_FLOOR = 1e-12


@dataclass(frozen=True)
class GupParams:
    """Oscillator constants and the GUP parameter.

    ``alpha`` has dimension (momentum)^-2; the dimensionless smallness
    parameter that multiplies every first-order correction is
    ``alpha * hbar * mass * omega``.
    """

    hbar: float = 1.0
    mass: float = 1.0
    omega: float = 1.0
    kb: float = 1.0
    alpha: float = 0.0

    def __post_init__(self):
        for name in ("hbar", "mass", "omega", "kb"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")
        if not np.isfinite(self.alpha) or self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha!r}")

    @property
    def hmw(self) -> float:
        """hbar * m * omega (oscillator momentum scale squared)."""
        return self.hbar * self.mass * self.omega

    @property
    def length_scale(self) -> float:
        """Oscillator length sqrt(hbar / (m omega))."""
        return float(np.sqrt(self.hbar / (self.mass * self.omega)))

    def beta(self, temperature):
        return 1.0 / (self.kb * np.asarray(temperature, dtype=float))

    def x(self, beta):
        """Dimensionless inverse temperature hbar * omega * beta."""
        return self.hbar * self.omega * np.asarray(beta, dtype=float)

    def x_from_temperature(self, temperature):
        return self.x(self.beta(temperature))

    def with_alpha(self, alpha: float) -> "GupParams":
        return GupParams(self.hbar, self.mass, self.omega, self.kb, alpha)


@dataclass(frozen=True)
class ThermalPoint:
    """Kernel coefficients at one inverse temperature.

    ``a`` and ``b`` define the Gaussian part of the kernel,
    ``exp(-[a (q0^2 + qf^2) - 2 b q0 qf])``. ``A1..A3`` build the quadratic
    prefactor f_E and ``B1..B3`` the quartic one S_1E / hbar.
    """

    beta: float
    x: float
    a: float
    b: float
    A1: float
    A2: float
    A3: float
    B1: float
    B2: float
    B3: float

    @property
    def coeffs(self) -> dict:
        return {k: getattr(self, k) for k in ("A1", "A2", "A3", "B1", "B2", "B3")}

    def f_e(self, q0, qf):
        return self.A1 - self.A2 * (q0**2 + qf**2) + 2.0 * self.A3 * q0 * qf

    def s1_e(self, q0, qf):
        """S_1E / hbar."""
        return (self.B1 * (q0**4 + qf**4)
                + self.B2 * (q0**3 * qf + q0 * qf**3)
                + self.B3 * q0**2 * qf**2)


@dataclass(frozen=True)
class KernelValue:
    amplitude: complex | float | np.ndarray
    validity_ratio: float | np.ndarray


def check_validity(ratio, what: str) -> None:
    """Warn when a first-order correction is no longer small."""
    worst = np.max(np.abs(ratio))
    if worst > VALIDITY_WARN_THRESHOLD:
        warnings.warn(
            f"{what}: O(alpha) correction is {worst:.3g} of the alpha=0 value; "
            "first-order result is unreliable",
            PerturbativeWarning,
            stacklevel=3,
        )


def minimal_length_sq(params: GupParams) -> float:
    """Squared minimal position uncertainty, 3 alpha hbar^2."""
    return 3.0 * params.alpha * params.hbar**2


def _scaled_hyperbolics(x):
    """Return u = e^-x, sinh(x) e^-x and cosh(x) e^-x."""
    u = np.exp(-x)
    sigma = -np.expm1(-2.0 * x) / 2.0
    kappa = (1.0 + u * u) / 2.0
    return u, sigma, kappa


def coth_half(x):
    """coth(x / 2) without overflow."""
    return (1.0 + np.exp(-x)) / -np.expm1(-x)


def kernel_coefficients(params: GupParams, beta) -> ThermalPoint:
    x = params.x(beta)
    if np.any(x <= 0):
        raise ValueError("beta must be positive")
    u, sigma, kappa = _scaled_hyperbolics(x)
    mw = params.mass * params.omega
    hb = params.hbar

    a = mw / (2.0 * hb) * kappa / sigma
    b = mw / (2.0 * hb) * u / sigma

    u2, u3, u4 = u**2, u**3, u**4
    one_m_u4 = -np.expm1(-4.0 * x)
    one_m_u6 = -np.expm1(-6.0 * x)
    one_m_u8 = -np.expm1(-8.0 * x)

    A1 = 3.0 * params.hmw / (8.0 * sigma**2) * (
        2.0 * x * u2 + 5.0 * sigma * kappa + x * (1.0 + u4) / 2.0)
    A2 = 3.0 * mw**2 / (8.0 * sigma**3) * (
        6.0 * x * kappa * u2 + 10.0 * sigma * u2 + 6.0 * sigma**3)
    A3 = 3.0 * mw**2 / (8.0 * sigma**3) * (
        2.0 * x * (2.0 * u3 + u * (1.0 + u4) / 2.0) + 10.0 * sigma * kappa * u)
    B1 = mw**3 / (32.0 * hb * sigma**4) * (
        12.0 * x * u4 + 4.0 * u2 * one_m_u4 + one_m_u8 / 2.0)
    B2 = -mw**3 / (8.0 * hb * sigma**4) * (
        12.0 * x * kappa * u3 + 11.0 * sigma * u3 + 1.5 * u * one_m_u6)
    B3 = 3.0 * mw**3 / (8.0 * hb * sigma**4) * (
        4.0 * x * u4 + x * u2 * (1.0 + u4) + 2.5 * u2 * one_m_u4)

    return ThermalPoint(beta=beta, x=x, a=a, b=b, A1=A1, A2=A2, A3=A3, B1=B1, B2=B2, B3=B3)


def partition_correction(params: GupParams, beta):
    """Relative O(alpha) term of Z: (3 alpha / 4) hbar m omega x coth^2(x/2)."""
    x = params.x(beta)
    return 0.75 * params.alpha * params.hmw * x * coth_half(x) ** 2


def partition_function(params: GupParams, beta):
    """Z = [1 / (2 sinh(x/2))] [1 - (3 alpha / 4) hbar m omega x coth^2(x/2)]."""
    x = params.x(beta)
    if np.any(x <= 0):
        raise ValueError("beta must be positive")
    z0 = np.exp(-x / 2.0) / -np.expm1(-x)
    corr = partition_correction(params, beta)
    check_validity(corr, "partition_function")
    return z0 * (1.0 - corr)


def _kernel_parts(params, beta, q0, qf):
    tp = kernel_coefficients(params, beta)
    q0 = np.asarray(q0, dtype=float)
    qf = np.asarray(qf, dtype=float)
    poly = params.alpha * (tp.f_e(q0, qf) + tp.s1_e(q0, qf))
    gauss = tp.a * (q0**2 + qf**2) - 2.0 * tp.b * q0 * qf
    return tp, poly, gauss


def euclidean_propagator(params: GupParams, beta, q0, qf) -> KernelValue:
    """Un-normalized Euclidean kernel G[qf, q0: hbar beta]."""
    tp, poly, gauss = _kernel_parts(params, beta, q0, qf)
    _, sigma, _ = _scaled_hyperbolics(tp.x)
    mw = params.mass * params.omega
    log_pref = 0.5 * (np.log(mw / (2.0 * np.pi * params.hbar * sigma)) - tp.x)
    amp = np.exp(log_pref - gauss) * (1.0 - poly)
    return KernelValue(amplitude=amp, validity_ratio=np.abs(poly))


def euclidean_kernel(params: GupParams, beta, q0, qf) -> KernelValue:
    """Normalized thermal density matrix rho_T[qf, q0: beta].

    Vectorized over ``q0`` and ``qf``. A :class:`PerturbativeWarning` is only
    raised for scalar evaluations, since on a quadrature grid the ratio is
    large far out in the tails where the Gaussian factor kills the kernel.
    """
    tp, poly, gauss = _kernel_parts(params, beta, q0, qf)
    u, sigma, _ = _scaled_hyperbolics(tp.x)
    mw = params.mass * params.omega
    # sqrt(m w / (2 pi hbar sinh x)) / Z0: the e^x pieces cancel
    log_pref = 0.5 * np.log(mw / (2.0 * np.pi * params.hbar * sigma)) + np.log1p(-u)
    z_bracket = 1.0 - partition_correction(params, beta)
    amp = np.exp(log_pref - gauss) * (1.0 - poly) / z_bracket
    ratio = np.abs(poly)
    if np.ndim(ratio) == 0:
        check_validity(ratio, "euclidean_kernel")
    return KernelValue(amplitude=amp, validity_ratio=ratio)


def real_time_propagator(params: GupParams, q0, qf, T, caustic_floor: float = CAUSTIC_FLOOR) -> KernelValue:
    """Feynman propagator K[qf, q0: T] to strict first order in alpha.

    The O(alpha) phase ``exp(i alpha S1 / hbar)`` is expanded together with
    ``f``, giving ``[1 + alpha (f + i S1 / hbar)] exp(i S0 / hbar)``, so that
    the continuation ``T = -i hbar beta`` reproduces the Euclidean kernel
    term by term. ``T`` may be complex. The square root uses the principal
    branch (no Maslov phase bookkeeping past caustics).
    """
    m, w, hb, al = params.mass, params.omega, params.hbar, params.alpha
    wT = w * np.asarray(T, dtype=complex)
    s, c = np.sin(wT), np.cos(wT)
    if np.any(np.abs(s) < caustic_floor):
        raise CausticError(f"|sin(omega T)| below {caustic_floor:g}")
    q0 = np.asarray(q0, dtype=float)
    qf = np.asarray(qf, dtype=float)
    r2 = q0**2 + qf**2

    S0 = m * w / (2.0 * s) * (r2 * c - 2.0 * q0 * qf)
    S1 = -(m * w) ** 3 / (32.0 * s**4) * (
        (12.0 * wT + 8.0 * np.sin(2.0 * wT) + np.sin(4.0 * wT)) * (q0**4 + qf**4)
        - 4.0 * (12.0 * wT * c + 11.0 * s + 3.0 * np.sin(3.0 * wT)) * q0 * qf * r2
        + 12.0 * (4.0 * wT + 2.0 * wT * np.cos(2.0 * wT) + 5.0 * np.sin(2.0 * wT)) * q0**2 * qf**2
    )
    f = (3j * hb * m * w / (8.0 * s**2) * (2.0 * wT + 5.0 * s * c + wT * np.cos(2.0 * wT))
         - 3.0 * (m * w) ** 2 / (8.0 * s**3) * (
             2.0 * wT * (3.0 * c * r2 - 2.0 * (2.0 + np.cos(2.0 * wT)) * q0 * qf)
             + 10.0 * s * (r2 - 2.0 * q0 * qf * c)
             - 6.0 * s**3 * r2))

    correction = al * (f + 1j * S1 / hb)
    pref = np.sqrt(m * w / (2j * np.pi * hb * s))
    amp = pref * (1.0 + correction) * np.exp(1j * S0 / hb)
    return KernelValue(amplitude=amp, validity_ratio=np.abs(correction))
