# %% [markdown]
# # Running every check
#
# `run_checks` evaluates each invariant and oracle comparison and reports the
# measured deviation next to its bound. It is what `qscissors validate` runs.

# %%
import time

import qscissors as qs

for tail_tol in (1e-12, 1e-6):
    start = time.perf_counter()
    results = qs.run_checks(tail_tol)
    elapsed = time.perf_counter() - start
    print(f"tail_tol = {tail_tol:g} ({elapsed:.1f} s)")
    for r in results:
        print("  " + r.line())

# %% [markdown]
# A looser tail tolerance shortens the thermal cutoff. The oracle bounds scale
# with it, so the suite still passes at 1e-6.

# %%
for tail_tol in (1e-12, 1e-6):
    print(tail_tol, qs.thermal_cutoff(qs.ThermalSpec(1.2, tail_tol)), "levels at nbar = 1.2")
