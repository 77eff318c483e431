# %% [markdown]
# # The informal law of apheresis
#
# Lumping the native circulation into one well-mixed compartment gives
# ``old plasma remaining = exp(-plasma volumes processed)``.

# %%
from dataclasses import replace

import numpy as np

from plasmaflow import NOMINAL, ModelConfiguration, fraction_old_remaining, plasma_volumes_processed, simulate_dde

for pvp in (0.5, 1.0, 1.5, 2.0, 3.0):
    typ = fraction_old_remaining(pvp, NOMINAL, "typical")
    sw = fraction_old_remaining(pvp, NOMINAL, "switched")
    print(f"{pvp:3.1f} volumes: {typ:.4f} old remaining (typical), {sw:.4f} (switched)")

# %% [markdown]
# With no ECMO volume the two-compartment DDE should follow the same curve,
# apart from a short lag while new plasma reaches the periphery.

# %%
p = replace(NOMINAL, V3=0.0)
ts = simulate_dde(p, ModelConfiguration("vv", "typical", "dde"), 4 * 3600.0)
for hours in (1, 2, 3, 4):
    t = hours * 3600.0
    pvp = plasma_volumes_processed(p, t)
    g2 = ts.at(t, "gamma2")
    print(f"t={hours} h  pvp={pvp:.3f}  1-gamma2={1 - g2:.4f}  exp(-pvp)={np.exp(-pvp):.4f}")
