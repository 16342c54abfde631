# %% [markdown]
# # Jets of diffeomorphisms
#
# A 2-jet or 3-jet stores the Taylor coefficients of a map up to that order.
# Composition is the truncated chain rule, in exact rationals.

# %%

import numpy as np

from cartanjet.jetcore import compose2, compose3, identity, inverse2, inverse3, line_jet, random_jet

f = line_jet(0, 2, 3)          # u -> 2u + 3u^2
g = line_jet(0, 1, 1)          # u -> u + u^2
print("f o g      =", compose2(f, g))
print("f^-1       =", inverse2(f))
print("f o f^-1   =", compose2(f, inverse2(f)))

# %% [markdown]
# Third order: (u + u^3) o (u + u^2) keeps terms through u^3.

# %%
print(compose3(line_jet(0, 1, 0, 1), line_jet(0, 1, 1, 0)))
print(inverse3(line_jet(0, 2, 3, 0)))

# %% [markdown]
# The group axioms hold exactly in any dimension.

# %%
rng = np.random.default_rng(0)
a, b, c = (random_jet(rng, 2, 3) for _ in range(3))
print("associative:", compose3(compose3(a, b), c) == compose3(a, compose3(b, c)))
print("inverse:    ", compose3(a, inverse3(a)) == identity(2, 3))
