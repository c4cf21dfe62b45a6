# %% [markdown]
# # Eigenvalues of rho without the closed form
#
# Sample the kernel on a quadrature grid, diagonalize, and compare with the
# first-order spectrum lambda_n = (1 - e^-x) e^-nx [1 + 3 alpha x h_n].

# %%
import numpy as np

from gupthermal import GupParams, entropy, spectral_oracle

# %%
for alpha in (0.0, 0.005, 0.01):
    p = GupParams(alpha=alpha)
    rep = spectral_oracle.compare_spectrum(p, 1.0, None, 5)
    print(f"alpha = {alpha}")
    for n, (num, cl) in enumerate(zip(rep.numeric, rep.closed)):
        print(f"  n={n}  numeric {num:.8f}  closed {cl:.8f}  diff {abs(num - cl):.1e}")

# %% [markdown]
# The differences at alpha > 0 are second order: doubling alpha roughly
# quadruples them.

# %%
d1 = spectral_oracle.compare_spectrum(GupParams(alpha=0.005), 1.0).max_diff
d2 = spectral_oracle.compare_spectrum(GupParams(alpha=0.01), 1.0).max_diff
print(f"ratio {d2 / d1:.2f}")

# %% [markdown]
# Only a finite number of eigenvalues keep a positive first-order bracket.

# %%
sp = entropy.spectrum(GupParams(alpha=0.01), 1.0, 12)
print("valid up to n =", sp.n_valid)
print(np.round(sp.brackets, 3))

# %% [markdown]
# Power sums of the spectrum reproduce Tr rho^k exactly at alpha = 0 and up to
# an O(alpha^2) remainder otherwise.

# %%
for alpha in (0.0, 0.01):
    sp = entropy.spectrum(GupParams(alpha=alpha), 1.0, 60)
    for k in (2, 3):
        gap = np.sum(sp.lambdas**k) - entropy.trace_rho_n(GupParams(alpha=alpha), 1.0, k)
        print(f"alpha={alpha:<5} k={k}  sum lambda^k - Tr rho^k = {gap: .2e}")
