# %% [markdown]
# # Cutting a thermal state down to one qubit
#
# A thermal field with mean photon number nbar goes into mode b. A single
# photon in mode a meets a vacuum mode c on a splitter of transmissivity T,
# then modes b and c meet on a 50:50 splitter. Whenever the detectors on b and
# c read (1, 0), mode a holds a state with at most one photon.

# %%
import numpy as np

import qscissors as qs

nbar, T = 0.5, 0.9
thermal = qs.make_thermal(qs.ThermalSpec(nbar))
print("thermal cutoff:", thermal.dims[0], "levels")
print("first populations:", np.round(thermal.populations()[:5], 6))

# %% [markdown]
# The simulation keeps the whole thermal tail up to 1e-12 and still returns a
# 2x2 density matrix: everything above one photon is removed by the herald.

# %%
res = qs.run_qsd(qs.QsdParams(nbar, T))
print("herald probability p_d =", res.p_d)
print("output state:\n", np.round(res.rho_out.data.real, 12))
print("closed form (p0, p1):", qs.cf_populations(nbar, T))

# %% [markdown]
# ## The dense route gives the same answer
#
# `run_qsd` contracts only the herald row of the second splitter. The dense
# route builds the full three-mode state and both unitaries, which is only
# practical for small cutoffs, so the input tail is cut at 1e-3 here.

# %%
small = qs.make_thermal(qs.ThermalSpec(nbar, 1e-3))
fast = qs.run_qsd_generic(small, T)
dense = qs.run_qsd_dense(small, T)
print("max |fast - dense| =", np.max(np.abs(fast.rho_out.data - dense.rho_out.data)))

# %% [markdown]
# ## The two ends of the T dial

# %%
for T_end in (0.0, 1.0):
    out = qs.run_qsd(qs.QsdParams(nbar, T_end))
    print(f"T = {T_end}: populations {np.round(out.populations, 12)}")

# T = 1 with a vacuum input never heralds
try:
    qs.run_qsd(qs.QsdParams(0.0, 1.0))
except qs.HeraldError as exc:
    print("nbar = 0, T = 1:", exc)

# %% [markdown]
# ## Coherence survives
#
# For a pure input sum_n g_n |n>, the output is proportional to
# -r g_0 |0> + t g_1 |1>. Only the two lowest amplitudes survive, with
# their relative phase intact.

# %%
plus = qs.pure_state(np.array([1, 1j, 0.5]) / np.sqrt(2.25))
cut = qs.run_qsd_generic(plus, 0.5)
print(np.round(cut.rho_out.data, 6))
