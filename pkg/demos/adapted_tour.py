"""
A basis adapted to T_7 and T_13
===============================

X = T_7, Y = T_13.  The grid m_{i,j} starts at F+G and X, Y shift it down.
"""

from char2hecke.adapted import build_adapted, stabilization_checks, tp_as_xy_series
from char2hecke.gf2poly import to_text

grid = build_adapted(3)
print("found inside K_%d" % grid.model.m)
for i, j in grid.keys():
    print(f"m[{i},{j}]  g = {to_text(grid.element(i, j).g)}")

# every relation rechecked through the series
for line in grid.verify_exact()[:6]:
    print(line)

# other Hecke operators as series in X and Y, up to grade 3
for p in (5, 11, 17):
    u = tp_as_xy_series(p, 3, grid)
    print(f"T_{p} =", " + ".join(f"X^{a}Y^{b}" for a, b in sorted(u)))

rep = stabilization_checks(out_precision=1024)
for name, ok in rep.results.items():
    print("ok " if ok else "BAD", name)
