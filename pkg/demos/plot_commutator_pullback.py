"""
Pulling back the degree-3 class along the commutator map
=======================================================

For PU(p) with p an odd prime, the mod-p cohomology contains the lift x3
of the integral degree-3 generator. Its coproduct is not primitive,
which is what makes the commutator pullback non-zero.
"""
from prequant.catalog import GroupId, presentation

data = presentation(GroupId("PU", 3), 3)
hopf, P = data.hopf, data.pres
x3 = P.gen("x3")

# %%
# The reduced coproduct carries the non-primitive part.
print("Δ(x3)      =", hopf.coproduct(x3))
print("reduced    =", hopf.reduced_coproduct(x3))
print("antipode   =", hopf.antipode(x3))

# %%
# Apply the commutator pullback. The answer is antisymmetric in the two
# tensor legs.
phi = hopf.phi_star(x3)
print("phi*(x3)   =", phi)

# %%
# The same pattern holds for every odd prime.
for p in (5, 7):
    d = presentation(GroupId("PU", p), p)
    print(f"PU({p}):", d.hopf.phi_star(d.pres.gen("x3")))

# %%
# A primitive class pulls back to zero. For SO(9) at p = 2 the lift is
# primitive and l0 is 1.
so = presentation(GroupId("SO", 9), 2)
print("SO(9) phi*(x3) =", so.hopf.phi_star(so.lift.cls) or 0)
