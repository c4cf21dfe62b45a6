# %% [markdown]
# # The GUP-corrected thermal state
#
# The thermal density matrix of an oscillator with a minimal length is a
# Gaussian kernel times a quartic polynomial in the two coordinates. Here we
# evaluate it, check that it is normalized, and look at the partition function.

# %%
import warnings

import numpy as np
from scipy import integrate

from gupthermal import GupParams, PerturbativeWarning, euclidean_kernel, kernel_coefficients, partition_function
from gupthermal.model import minimal_length_sq

# quad samples far tails where the relative alpha term is large but the kernel is ~0
warnings.simplefilter("ignore", PerturbativeWarning)

# %%
p = GupParams(alpha=0.01)  # hbar = m = omega = k_B = 1
print("minimal length^2:", minimal_length_sq(p))

# %% [markdown]
# Kernel coefficients at x = hbar omega beta = 1. `a / b` is cosh x.

# %%
tp = kernel_coefficients(p, 1.0)
print(f"a = {tp.a:.6f}, b = {tp.b:.6f}, a/b = {tp.a / tp.b:.6f}, cosh 1 = {np.cosh(1):.6f}")
for name, value in tp.coeffs.items():
    print(f"  {name} = {value: .6f}")

# %% [markdown]
# The partition function drops below its alpha = 0 value.

# %%
for alpha in (0.0, 0.01, 0.02):
    print(f"alpha = {alpha:<5} Z(beta=1) = {partition_function(p.with_alpha(alpha), 1.0):.6f}")

# %% [markdown]
# Tr rho = 1 by quadrature along the diagonal.

# %%
for alpha in (0.0, 0.01, 0.02):
    q = p.with_alpha(alpha)
    tr, _ = integrate.quad(lambda s: euclidean_kernel(q, 1.0, s, s).amplitude, -12, 12, epsabs=1e-13)
    print(f"alpha = {alpha:<5} Tr rho = {tr:.12f}")

# %% [markdown]
# A slice of the density matrix. The alpha correction is a few percent near the
# centre and grows like q^4 in the tails, where the Gaussian has already made
# the kernel negligible.

# %%
q = np.linspace(-3, 3, 7)
k0 = euclidean_kernel(p.with_alpha(0.0), 1.0, q, 0.0 * q).amplitude
k1 = euclidean_kernel(p, 1.0, q, 0.0 * q)
print(" q      rho(q,0) a=0   rho(q,0) a=0.01   |alpha part|")
for row in zip(q, k0, k1.amplitude, k1.validity_ratio):
    print("{:5.1f}   {:.6e}   {:.6e}      {:.3f}".format(*row))
