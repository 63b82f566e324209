"""
The center of SU(n) acting on the alcove
========================================

The alcove is a simplex in the Cartan subalgebra. Translating by the
vertex v1 and reducing back into the alcove realizes the generator of
the center, which rotates the vertices.
"""
from prequant.alcove import (CartanPoint, alcove_reduce, alcove_vertices, barycenter,
                             center_action, conjclass_preq_check, simple_root)

n = 4
data = alcove_vertices(n)
for i, v in enumerate(data.vertices):
    print(f"v{i} = {v}  ->  {center_action(n, 1, v)}")

# %%
# The barycenter is the only fixed point. It pairs to 1/n with each
# simple root, so its conjugacy class needs n | k.
z = barycenter(n)
print("barycenter", z, "fixed:", center_action(n, 1, z) == z)
print("pairings", [str(z.dot(simple_root(n, i))) for i in range(1, n)])
print("admissible levels", [k for k in range(1, 13) if conjclass_preq_check(n, z, k)])

# %%
# Reduction of an arbitrary point.
x = CartanPoint.parse("5/2 -1 -3/4 -3/4", n)
print(x, "reduces to", alcove_reduce(n, x))
