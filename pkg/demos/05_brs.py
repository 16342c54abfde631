# %% [markdown]
# # BRS symmetry and the Virasoro action
#
# Fields on the line: frame jets E, F, the gl_1 coefficient w and an odd
# ghost xi.  The operator s is defined on those and prolonged.

# %%
from cartanjet.brs import (
    BRSSystem,
    nilpotency_check,
    residual_ghosts,
    russian_formula_check,
    virasoro_variation,
)

system = BRSSystem()
ln, s = system.line, system.s
print("s xi =", s(ln.jet("xi")))
print("s F  =", s(ln.jet("F")))

# %%
for check in nilpotency_check(system) + russian_formula_check(system)[:3]:
    print(check.tag, "|", check.statement, "|", check.passed)

# %% [markdown]
# After the projective gauge only one ghost combination survives, and the
# top coefficient G of Gamma moves by the Virasoro coadjoint action.

# %%
print(residual_ghosts(system))
for check in virasoro_variation(system):
    print(("PASS" if check.passed else "FAIL"), check.statement)
