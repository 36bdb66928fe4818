"""Where resonance-based schemes come from.

The nonlinear part of one step is governed by

    I(t) = int_0^t e^{-is Lap} ( |e^{is Lap} u|^2 e^{is Lap} u ) ds.

In Fourier variables the integrand carries the phase
exp(i s R(k1, k2, k3)) with R = 2 (k2 - k1)(k2 - k3).  Resonance-based
schemes integrate the dominant 2 k2^2 part exactly (via phi-functions of the
Laplacian) and Taylor-expand only the mixed terms.
"""

# %%
import numpy as np

from resonant import FourierGrid, RoughDataSpec, rough_field
from resonant.oracle import (
    osc,
    osc_integral_quadrature,
    osc_triple_sum,
    resonance_factor,
    resonance_integral_order1,
    resonance_integral_order2,
)

print("R(1, 0, 1) =", resonance_factor(1, 0, 1), "  R(2, -1, 3) =", resonance_factor(2, -1, 3))

# %% [markdown]
# The integrand computed with FFTs agrees with the literal triple sum.

# %%
g16 = FourierGrid(16)
u = rough_field(g16, RoughDataSpec(1.0, 3))
print("||osc - triple sum|| =", f"{(osc(0.4, u) - osc_triple_sum(0.4, u)).l2_norm():.2e}")

# %% [markdown]
# Against a Gauss-Legendre evaluation of I(t), the first-order resonance
# approximation t u^2 phi1(-2it Lap) conj(u) has error O(t^2) and the
# second-order one O(t^3).

# %%
g = FourierGrid(64)
u = rough_field(g, RoughDataSpec(4.0, 5))
ts = 2.0 ** -np.arange(3, 9)
e1, e2 = [], []
for t in ts:
    q = osc_integral_quadrature(t, u)
    e1.append((q - resonance_integral_order1(t, u)).l2_norm())
    e2.append((q - resonance_integral_order2(t, u)).l2_norm())

print(f"{'t':>10} {'order1':>12} {'order2':>12}")
for t, a, b in zip(ts, e1, e2):
    print(f"{t:10.5f} {a:12.3e} {b:12.3e}")
print("fitted rates:", np.polyfit(np.log(ts), np.log(e1), 1)[0].round(3),
      np.polyfit(np.log(ts), np.log(e2), 1)[0].round(3))
