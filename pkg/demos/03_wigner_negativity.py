# %% [markdown]
# # When the output goes nonclassical
#
# The output p0|0><0| + p1|1><1| has Wigner function
# W(beta) = (2/pi) exp(-2|beta|^2) (p0 + p1 (4|beta|^2 - 1)),
# which dips below zero near the origin once p1 > p0, that is once
# T > (nbar+1)/(1+2 nbar). The parity <(-1)^n> = p0 - p1 tracks the same
# sign, because W(0) = (2/pi) <(-1)^n>.

# %%
import math

import numpy as np

import qscissors as qs

grid = qs.GridSpec()  # q, p in [-3, 3], 121 points each
for T in (0.4, 0.9):
    rho = qs.run_qsd(qs.QsdParams(0.5, T)).rho_out
    w = qs.wigner(rho, grid)
    w_min, q, p = w.argmin()
    print(f"nbar=0.5 T={T}: min W = {w_min:+.4f} at (q, p) = ({q:+.2f}, {p:+.2f}); "
          f"integral over the clipped grid = {w.integral():.4f}")

# %% [markdown]
# ## A coarse picture
#
# `-` marks negative grid points, `.` small positive values and `#` large ones.

# %%
coarse = qs.GridSpec(-2.5, 2.5, 21, -2.5, 2.5, 41)
values = qs.wigner(qs.run_qsd(qs.QsdParams(0.5, 0.9)).rho_out, coarse).values
for row in values:
    print("".join("-" if v < 0 else ("#" if v > 0.05 else ".") for v in row))

# %% [markdown]
# ## The negative disk
#
# The negative region is the disk |beta| < r with
# r^2 = (2 T nbar - (nbar + 1 - T)) / (4 nbar T). Its radius grows from zero at
# the threshold.

# %%
for nbar in (0.2, 0.5, 1.0, 1.2):
    t_w = qs.cf_thresholds(nbar)[2]
    radii = []
    for T in (t_w, (t_w + 1) / 2, 1.0):
        r = qs.negativity_region_radius(nbar, T)
        radii.append(f"r(T={T:.3f}) = {r:.4f}")
    print(f"nbar={nbar}: " + ", ".join(radii))

# %% [markdown]
# ## Two ways to evaluate W
#
# Fock-diagonal states use the Laguerre sum. General states go through the
# displaced parity. The two must agree wherever both apply.

# %%
rho = qs.run_qsd(qs.QsdParams(1.2, 0.8)).rho_out
a = qs.wigner(rho, grid, method="laguerre").values
b = qs.wigner(rho, grid, method="parity").values
print("max |laguerre - parity| =", np.abs(a - b).max())
print("parity vs (pi/2) W(0):", qs.parity(rho), math.pi / 2 * a[60, 60])
