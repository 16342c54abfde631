# %% [markdown]
# # Projective structure and the Schwarzian
#
# Möbius jets are exactly the projective lifts, and the Schwarzian
# measures the failure of a coordinate change to be one.

# %%
import numpy as np

from cartanjet.cartanconn import FrameBundleContext
from cartanjet.jetcore import compose3, random_jet, to_derivatives
from cartanjet.projective import (
    CoordinateChange,
    ProjFrame2,
    Sl2Element,
    lift3,
    mobius_jet,
    proj_gamma,
    schwarzian,
    schwarzian_polynomial,
    transform_gamma,
)

m = Sl2Element(2, 1, 3)
jet = mobius_jet(m, 3)
print(jet)
print("lift3 reproduces it:", lift3(ProjFrame2.from_jet(jet)) == jet)
print("S =", schwarzian(jet))

# %%
print("S(x + x^3) at 0 =", schwarzian_polynomial([0, 1, 0, 1], 0))

# %% [markdown]
# Cocycle: S(f o g) = S(f) g'^2 + S(g).

# %%
rng = np.random.default_rng(2)
f, g = random_jet(rng, 1, 3), random_jet(rng, 1, 3)
g1 = to_derivatives(g)[1].flat[0]
print(schwarzian(compose3(f, g)) == schwarzian(f) * g1 ** 2 + schwarzian(g))

# %% [markdown]
# Symbolically, the projective connection picks up S dx under a change of
# coordinates with jacobian tower J, J', J''.

# %%
ctx = FrameBundleContext()
print("Gamma =", proj_gamma(ctx))
print("Gamma - J Gamma' =", transform_gamma(ctx))
print("S(phi) =", schwarzian(CoordinateChange.symbolic(ctx)))
