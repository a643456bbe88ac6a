# %% [markdown]
# # Complex-order Bessel functions and the ball transform
#
# A walk through the evaluation routes for J_ν with complex ν and the radial
# Fourier transform of the ball distribution built on top of them.
# Run top to bottom with `python notebooks/01_bessel_and_ball_transform.py`
# or cell by cell in any editor that understands `# %%` markers.

# %%
import numpy as np

from conewave import bessel, radial
from conewave.radial import OmegaSpec

# %% [markdown]
# ## Two routes, one function
#
# The integral route works for Re ν > -1/2 at any ρ. The power series is
# accurate for moderate ρ. They are computed independently, so their
# agreement is a real check.

# %%
for nu, rho in [(0.3 + 1j, 5.0), (1 + 0.5j, 12.0), (-0.35 + 2j, 3.0)]:
    a = bessel.bessel_j(nu, rho, bessel.POISSON)
    b = bessel.bessel_j(nu, rho, bessel.SERIES)
    print(f"nu={nu}, rho={rho}: {a:.12f}  rel diff {abs(a - b) / abs(b):.1e}")

# %% [markdown]
# ## Large argument behaviour
#
# Past the crossover the truncated Hankel expansion takes over. Its error,
# scaled by ρ^{2N+1/2}, stays bounded. At ν = 1/2 the expansion terminates
# and the remainder is rounding noise.

# %%
rho = np.linspace(bessel.CROSSOVER, 100, 5)
for N in (0, 1, 2):
    scaled = bessel.asymptotic_remainder(1.0, rho, N) * rho ** (2 * N + 0.5)
    print(f"N={N}: scaled remainder {np.array2string(scaled, precision=4)}")
print("nu=1/2, N=1 remainder:", bessel.asymptotic_remainder(0.5, rho, 1).max())

# %% [markdown]
# ## The ball transform three ways
#
# Closed Bessel form, Taylor series and direct integration over the unit
# ball should agree. At the origin with z = 0 in one dimension the transform
# is the length of (-1, 1).

# %%
spec = OmegaSpec(0.25 + 0.5j, 2)
for xi in (0.0, 0.7, 1.5):
    closed = radial.omega_hat(spec, xi)
    series = radial.omega_hat_series(spec, xi)
    ball = radial.omega_hat_oracle_ball(spec, xi)
    print(f"xi={xi}: {closed:.10f}  series {abs(closed - series):.1e}  ball {abs(closed - ball):.1e}")
print("length of (-1, 1):", radial.omega_hat(OmegaSpec(0, 1), 0.0).real)

# %%
