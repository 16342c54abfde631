# %% [markdown]
# # Jets of vector fields
#
# gl_-1 + gl_0 + gl_1: constant, linear and quadratic parts of a vector field.
# The bracket is minus the Lie bracket, truncated at grade 1.

# %%
import numpy as np

from cartanjet.gradedlie import VecJet, adjoint, bracket_oracle, random_vecjet
from cartanjet.jetcore import line_jet

d_x = VecJet.line(1, 0, 0)        # d/dx
euler = VecJet.line(0, 1, 0)      # x d/dx
quad = VecJet.line(0, 0, 1)       # x^2 d/dx
print("[d_x, euler] =", bracket_oracle(d_x, euler))
print("[d_x, quad]  =", bracket_oracle(d_x, quad))
print("[euler, quad] =", bracket_oracle(euler, quad))

# %% [markdown]
# On the line this is sl(2), so Jacobi holds.  In dimension two the
# truncation bites: [gl_1, gl_1] would land in grade 2 and is dropped.

# %%
rng = np.random.default_rng(1)
def jacobi(n):
    x, y, z = (random_vecjet(rng, n) for _ in range(3))
    b = bracket_oracle
    return (b(x, b(y, z)) + b(y, b(z, x)) + b(z, b(x, y))).is_zero()

print("n=1:", all(jacobi(1) for _ in range(20)))
print("n=2:", sum(jacobi(2) for _ in range(20)), "of 20 hold")

# %% [markdown]
# Ad(g) acts by conjugation with the 3-jet g.

# %%
g = line_jet(0, 2, 1, 0)
print(adjoint(g, d_x))
