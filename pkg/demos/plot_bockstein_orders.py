"""
Reading torsion orders off Bockstein rules
==========================================

A mod-p class that is hit by the r-th Bockstein comes from a Z/p^r
summand of integral cohomology. The solver looks for a preimage one
height at a time.
"""
from prequant.algebra import GeneratorSpec, Presentation, TRUNCATED
from prequant.catalog import GroupId, presentation
from prequant.torsion import BocksteinRules, bockstein_apply, integral_order

# %%
# The Moore space P^3(4): x in degree 2 and y in degree 3. The first
# Bockstein kills x and the second sends it to y.
P = Presentation(2, [GeneratorSpec("x", 2, TRUNCATED, 2), GeneratorSpec("y", 3, TRUNCATED, 2)])
rules = BocksteinRules(P)
rules.set("x", 1, 0)
rules.set("x", 2, P.gen("y"))
res = integral_order(P.gen("y"), rules)
print(f"order of y: {res.order}  (witness {res.witness}, height {res.height})")

# %%
# For PU(n) the pullback of x3 is hit at height v_p(n), with witness
# -x1⊗x1 at odd p.
for n, p in [(3, 3), (9, 3), (4, 2), (8, 2), (12, 3)]:
    d = presentation(GroupId("PU", n), p)
    target = d.hopf.phi_star(d.pres.gen("x3"))
    r = integral_order(target, d.rules, r_max=GroupId("PU", n).r_max(p))
    back = bockstein_apply(d.rules, r.witness, r.height)
    print(f"PU({n}) p={p}: order {r.order}, witness {r.witness}, round trip {back == target}")
