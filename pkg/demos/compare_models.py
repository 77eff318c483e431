# %% [markdown]
# # Algebraic vs differential models
#
# The algebraic (ADE) and differential (DDE) models describe the same
# circuit.  Here both are run for four hours at the nominal parameters.

# %%
from plasmaflow import NOMINAL, compare_models

for ecmo in ("va", "vv"):
    for ports in ("typical", "switched"):
        r = compare_models(NOMINAL, ecmo, ports)
        print(f"{ecmo}-{ports:9s} sup|ADE-DDE| = {r.sup_diff:.4f} at t = {r.t_sup_diff:7.2f} s, "
              f"gamma1(4 h): ADE {r.ade.gamma1[-1]:.5f}  DDE {r.dde.gamma1[-1]:.5f}")

# %% [markdown]
# The gap peaks right after the zero-history window.  The ADE jumps to its
# constant term ``k`` in a single step, while the DDE starts from rest.
# The gap then closes steadily; by the four hour mark the curves agree to
# about 5e-4.

# %%
r = compare_models(NOMINAL, "va", "typical")
late = r.ade.times >= 3600.0
print("sup gap after 1 h:", abs(r.ade.gamma1[late] - r.dde.gamma1[late]).max())
