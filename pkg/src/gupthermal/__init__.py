"""First-order GUP corrections to the thermal state of a harmonic oscillator.

Closed forms for the kernel, Tr rho^n, purity and entropies, together with
the oracles (dense LU, Wick sums, quadrature eigenvalues) used to check them.
"""

from . import determinants, entropy, model, moments, spectral_oracle, verify
from .determinants import AbPair, det_G, det_H, lu_det
from .entropy import (
    EntropyValue,
    SpectrumSlice,
    TStar,
    purity,
    renyi,
    renyi_inf,
    spectrum,
    t_star,
    trace_rho_n,
    von_neumann,
)
from .exceptions import (
    CausticError,
    DomainError,
    GridTooSmallError,
    GupError,
    NoMaximumError,
    OrderOneError,
    PerturbativeWarning,
)
from .model import (
    GupParams,
    KernelValue,
    ThermalPoint,
    euclidean_kernel,
    kernel_coefficients,
    minimal_length_sq,
    partition_function,
    real_time_propagator,
)
from .spectral_oracle import GridSpec, compare_spectrum

__version__ = "0.1.0"
