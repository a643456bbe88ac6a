# %% [markdown]
# # Light-cone transforms and radial multipliers on a grid
#
# How the light-cone distribution blows up near |τ| = |ξ|, what the
# resulting radial multipliers look like, and how they act on sampled
# fields through the FFT engine.

# %%
import numpy as np

from conewave import cone
from conewave.cone import ConePoint
from conewave.operators import (
    DEFAULT_GRID,
    MultiplierSpec,
    TestFunction,
    apply_multiplier,
    direct_quadrature_oracle,
    operator_norm_estimate,
)
from conewave.suites import im_sweep

# %% [markdown]
# ## Closed form against the oscillatory representation
#
# Both sides are evaluated away from the cone. The oscillatory side sums
# dyadic shells and closes with an analytic tail.

# %%
for alpha in (0.75, 0.6 + 0.3j):
    p = ConePoint(1.0, 2.5)
    closed = cone.lambda_hat_closed(alpha, p)
    osc = cone.lambda_hat_oscillatory(alpha, p)
    print(f"alpha={alpha}: closed {closed:.10f}  rel diff {abs(osc - closed) / abs(closed):.1e}")

# %% [markdown]
# ## Blow-up rate at the cone
#
# The fitted log-log slope of |Λ̂| against the gap should be -Re α.

# %%
for alpha in (0.75, 0.3):
    rep = cone.cone_rate_report(alpha, 1.0, "outside")
    print(f"alpha={alpha}: slope {rep.constants['slope']:.4f}")

# %% [markdown]
# ## A smoothed Bochner-Riesz multiplier on a gaussian
#
# The FFT result at a handful of points is compared with a direct
# quadrature over frequency that never touches a grid.

# %%
tf = TestFunction("gaussian", 2.0)
m = MultiplierSpec("S-delta-psi", 0.25)
out = apply_multiplier(tf.sample(DEFAULT_GRID), m)
probes = np.array([-3.0, 0.0, 2.5])
idx = np.round((probes + DEFAULT_GRID.halfwidth) / DEFAULT_GRID.dx).astype(int)
oracle = direct_quadrature_oracle(tf, m, probes)
for x, a, b in zip(probes, out.values[idx], oracle):
    print(f"x={x:+.1f}: fft {a.real:+.10f}  oracle {b.real:+.10f}  diff {abs(a - b):.1e}")

# %% [markdown]
# ## Empirical norms
#
# The estimate is a maximum ratio over a small test family, so it is a lower
# bound for the true operator norm. At p = 2 it cannot exceed the sup of the
# multiplier.

# %%
for p in (1.2, 2.0, 6.0):
    print(f"p={p}: ratio_max {operator_norm_estimate(m, p).ratio_max:.6f}")
ests, slope = im_sweep()
print("Im sweep at p = 1.2:", [round(e, 5) for e in ests], "fitted slope", round(slope, 4))

# %%
