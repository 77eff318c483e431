# %% [markdown]
# # Which parameter matters?
#
# Each parameter is bumped by 10% in turn, and the change in ``gamma1``
# after four hours is divided by the size of the bump.

# %%
from plasmaflow import NOMINAL, sensitivity_analysis

# a fine grid keeps the rounding of the ECMO transit time out of S(alpha)
report = sensitivity_analysis(NOMINAL, "vv", "typical", dt=0.001)
for e in report.ranked():
    print(f"{e.parameter:6s} {e.sensitivity:+.3e}")

# %% [markdown]
# The device flow ``Q1`` dominates by more than an order of magnitude.  The
# ECMO circuit volume ``V3`` barely matters.
