# %% [markdown]
# # Determinants and Gaussian moments behind Tr rho^n
#
# Tr rho^n is a Gaussian integral over a ring of n coordinates. Its matrix G_n
# is cyclic tridiagonal; the quartic corrections need four moment integrals.
# Each closed form is compared with a brute-force route.

# %%
import numpy as np

from gupthermal import GupParams, determinants as det, entropy, moments
from gupthermal.moments import MomentKind

ab = det.AbPair(1.0, 0.5)

# %% [markdown]
# Closed-form determinants against dense LU.

# %%
for n in range(1, 9):
    closed, lu = det.det_G(ab, n), det.lu_det(det.build_G(ab, n))
    print(f"n={n}  det G = {closed:12.6f}   LU = {lu:12.6f}   det H = {det.det_H(ab, n):10.6f}")

# %% [markdown]
# Moments against Isserlis' theorem on the covariance (1/2) G_n^-1.

# %%
for kind in MomentKind:
    n = 5
    closed = moments.moment(ab, n, kind).value
    wick = moments.wick_sum(ab, n, kind)
    print(f"{kind.value:<20} closed {closed:.12f}  Wick {wick:.12f}  rel {abs(closed / wick - 1):.1e}")

# %% [markdown]
# The quartic moments also follow from differentiating perturbed determinants.

# %%
n = 6
print(n * moments.quartic_by_differentiation(ab, n), moments.moment_sum_quartic(ab, n))
print(n * moments.sq_sq_by_differentiation(ab, n), moments.moment_cyclic_sq_sq(ab, n))
print(n * moments.cubic_cross_by_differentiation(ab, n), moments.moment_cyclic_cubic_cross(ab, n))

# %% [markdown]
# Put everything together: Tr rho^n rebuilt from the pieces against the closed form.

# %%
p = GupParams(alpha=0.01)
for n in (2, 3, 4):
    print(n, entropy.assemble_trace_rho_n(p, 1.0, n), entropy.trace_rho_n(p, 1.0, n))
