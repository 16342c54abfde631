# %% [markdown]
# # The Cartan connection on the second-order frame bundle
#
# Coordinates (x, e, e2) with symbolic differentials.  The gl_1 part is a
# free symbol W.

# %%
from cartanjet.cartanconn import (
    FrameBundleContext,
    cartan_connection,
    curvature,
    frame_lift,
    gauge_transform,
    solder_forms,
)
from cartanjet.symba import var

ctx = FrameBundleContext()
theta, theta_u = solder_forms(ctx)
print("theta   =", theta)
print("theta_u =", theta_u)
print("torsion =", ctx.d(theta) + theta_u * theta)

# %%
omega = cartan_connection(ctx)
print(omega)
print("curvature:", curvature(omega, ctx.d))

# %% [markdown]
# Gauging by any 3-jet lift flattens the lower parts: only the top
# component carries information.

# %%
e, e2, e3 = var(ctx.e, ctx.e2, ctx.e3)
gamma = gauge_transform(omega, frame_lift(e, e2, e3), ctx.d)
print(gamma)
