"""
Marked points and the flag manifold
===================================

The generator of the center acts on H^2 of SU(n)/T by a cyclic shift.
sigma - 1 is injective with cyclic cokernel of order n. This is the
input for the marked-point verdicts.
"""
from prequant.alcove import barycenter, flag_sigma_matrix, marked_points_check

for n in range(2, 7):
    A = flag_sigma_matrix(n)
    d, _, _ = A.smith_normal_form()
    print(f"n={n}: invariant factors {d}, cokernel {A.cokernel()}")

# %%
# Verdicts with every marked point at the barycenter.
for n in (2, 3, 4):
    z = barycenter(n)
    ok = [k for k in range(1, 13) if marked_points_check(n, k, [z, z]).verdict.value == "Yes"]
    print(f"n={n}: Yes for k in {ok}")

# %%
# For even n > 2 a level divisible by n but not 2n is left open.
print(marked_points_check(4, 4, [barycenter(4)]).reasons)
