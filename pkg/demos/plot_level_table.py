"""
The smallest admissible level for each group
============================================

l0 is assembled prime by prime. Each row records where every p-part
came from. Most are computed from Bockstein rules; the rest are pinned
to a smaller group or come from the Tor pushforward for SU(n)/Z_k.
"""
from prequant.catalog import GroupId, check_level, l0, table

# %%
for row in table(6):
    parts = ", ".join(f"p={b.prime}: {b.order} [{b.provenance.split('(')[0]}]"
                      for b in row.breakdown)
    print(f"{str(row.group):12s} l0 = {row.value:2d}   {parts}")

# %%
# A level is admissible exactly when l0 divides it, whatever the genus.
g = GroupId("SUmodZk", 8, 4)
for level in (2, 3, 4):
    print(level, [check_level(g, level, genus)[0] for genus in (1, 2, 3)])

# %%
# Pinned entries carry their justification.
print(l0(GroupId("PU", 2)).citations[0])
