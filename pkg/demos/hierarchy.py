"""
A grid of deformed bialgebras
=============================

For an input at the top of the ladder every pair of orders (i, j) gives a
Lie bialgebra: the bracket deformed i times by n together with the
cobracket deformed j times by the transpose of n.
"""

from nlbialgebra import build_hierarchy, catalog, coboundary_cobracket, RMatrix
from nlbialgebra.bialgebra import HierarchyRefused

pb = catalog.solvable22()
h = build_hierarchy(pb.algebra.bracket, pb.cobracket, pb.operator, 4)
print(f"solvable22 depth {h.depth}: {len(h.cells)} cells, all valid: {h.all_valid}")
for cell in h.cells:
    print(f"  ({cell.i},{cell.j}) primal Lie {cell.primal_lie}  dual Lie {cell.dual_lie}  cocycle {cell.cocycle}")

# Pairwise compatibility of the primal brackets
print("compatible:", all(ok for _, _, ok in h.compatibility))

# The coboundary example on R^4 reaches depth 3 as well
r4 = catalog.r4_coboundary()
delta = coboundary_cobracket(RMatrix(r4.algebra.bracket, r4.r_matrix))
print("r4_coboundary depth 3 valid:", build_hierarchy(r4.algebra.bracket, delta, r4.operator, 3).all_valid)

# Inputs below the top rung are refused unless forced
et = catalog.euler_top()
try:
    build_hierarchy(et.algebra.bracket, et.cobracket, et.operator, 2)
except HierarchyRefused as exc:
    print("euler_top refused:", exc)
forced = build_hierarchy(et.algebra.bracket, et.cobracket, et.operator, 2, force=True)
print("euler_top forced, all valid:", forced.all_valid)
