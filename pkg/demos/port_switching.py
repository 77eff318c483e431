# %% [markdown]
# # Typical vs switched device ports
#
# With switched ports some of the freshly returned plasma re-enters the
# device before reaching the patient, so the switched circuit is never more
# efficient.  How much is lost depends on the ECMO flow
# fraction ``alpha``.

# %%
from plasmaflow import NOMINAL, sweep_alpha

for ecmo in ("va", "vv"):
    report = sweep_alpha(NOMINAL, ecmo)
    print(ecmo)
    for a, pd in zip(report.alphas, report.terminal_pd):
        print(f"  alpha={a:<5} terminal percent difference {pd:6.3f} %")

# %% [markdown]
# At low ECMO flow the penalty is around ten percent.  At the nominal
# ``alpha = 0.7`` it is a fraction of a percent.
