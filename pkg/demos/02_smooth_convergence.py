"""Global convergence orders on smooth data.

Five schemes, one shared reference, dyadic step sizes 2^-4 ... 2^-10 on
N = 128 modes up to T = 1.  The CSV written at the end can be plotted with
any tool (log-log, tau against l2_error).
"""

# %%
import sys

import numpy as np

from resonant.harness import ConvergenceConfig, emit_csv, reference_solution, run_convergence

taus = tuple(2.0 ** -np.arange(4, 11))
base = ConvergenceConfig("lie", taus, n_modes=128, t_end=1.0, data="two_mode:0.5:1:0.5:2")
u0 = base.initial_data()

# %% [markdown]
# The reference is res2 at tau_min / 32, checked against Strang at the same
# step.  Computing it once and sharing it keeps the whole study to seconds.

# %%
ref = reference_solution(base, u0)

reports = []
for scheme in ["lie", "strang", "exp1", "res1", "res2"]:
    cfg = ConvergenceConfig(**{**base.__dict__, "scheme": scheme})
    reports.append(run_convergence(cfg, reference=ref, u0=u0))

# %%
print(f"{'tau':>10}" + "".join(f"{r.scheme:>12}" for r in reports))
for i, tau in enumerate(taus):
    print(f"{tau:10.6f}" + "".join(f"{r.records[i].l2_error:12.3e}" for r in reports))
print(f"{'slope':>10}" + "".join(f"{r.slope:12.3f}" for r in reports))

# %% [markdown]
# Lie, exp1 and res1 are first order, Strang and res2 second order.  The
# resonance-based schemes pay for their low regularity requirements with
# larger constants on smooth data.  Pass a path to write the table as CSV:

# %%
if len(sys.argv) > 1:
    emit_csv(reports, sys.argv[1])
    print("wrote", sys.argv[1])
