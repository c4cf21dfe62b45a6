# %% [markdown]
# # Purity, entropies and the entropy maximum
#
# Sweeps of the three quantities the CLI writes out, as small tables.

# %%
import warnings

import numpy as np

from gupthermal import GupParams, PerturbativeWarning, purity, renyi, t_star, von_neumann

warnings.simplefilter("ignore", PerturbativeWarning)  # the hot end is outside first order on purpose
T = np.geomspace(0.05, 100, 9)

# %% [markdown]
# ## Purity
#
# At alpha = 0 the purity is tanh(x/2): 1 when cold, 0 when hot. With alpha > 0
# it levels off at 9 alpha / 4 instead.

# %%
print("     T    " + "".join(f"alpha={a:<8}" for a in (0, 0.04, 0.08)))
for t in T:
    print(f"{t:8.3f}  " + "".join(f"{purity(GupParams(alpha=a), t):<14.6f}" for a in (0, 0.04, 0.08)))
print("T = 1e4:", [round(purity(GupParams(alpha=a), 1e4), 5) for a in (0.04, 0.08)])

# %% [markdown]
# ## von Neumann entropy
#
# The alpha term is negative and grows with T, so the entropy peaks and then falls.

# %%
for a in (0.0, 0.01, 0.02):
    s = von_neumann(GupParams(alpha=a), T)
    print(f"alpha={a:<5}", " ".join(f"{v:7.3f}" for v in s.value))

ts = t_star(GupParams(alpha=0.01))
print(f"T_* = {ts.temperature:.4f} (grid argmax {ts.grid_argmax:.4f}), residual {ts.residual:.1e}")

# %% [markdown]
# ## Renyi entropies
#
# Ordered S_0.8 > S_1.8 > S_inf at alpha = 0. With alpha = 0.01 the order flips
# once the temperature is high enough.

# %%
for a in (0.0, 0.01):
    print(f"alpha = {a}")
    for g in (0.8, 1.8, np.inf):
        s = renyi(GupParams(alpha=a), T, g).value
        print(f"  gamma={g:<4}", " ".join(f"{v:7.3f}" for v in s))
