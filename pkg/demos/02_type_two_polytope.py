"""
A polytope that is not Delzant
==============================

For n = 4 and pi/3 < y < pi/2 the moment polytope A_y has eight vertices.
Four of them ("R" vertices, all coordinates positive) are simple; the four
"I" vertices sit on a wall xi_k = 0 and meet four edges, one too many for a
Delzant polytope in dimension three.
"""

import numpy as np

from compact_rs import Coupling, ay_polytope, delzant_edge_counts, fixed_points, in_Ay_plus

c = Coupling.exact(4, 2, 5)
poly = ay_polytope(4, c)

print("vertices (units of pi) and edge counts")
for v, k in delzant_edge_counts(poly):
    print("  (" + ", ".join(str(x) for x in v) + f")  edges: {k}")

# Torus fixed points on the reduced phase space sit over the regular vertices.
print("fixed points:")
for pt in fixed_points(4, c):
    print("  ", np.round(pt.xi / np.pi, 6))

# A_y^+ (all z_l > 0) is the open part of A_y over which the local
# Lax matrix is defined.  Estimate its share of the alcove.
rng = np.random.default_rng(0)
xs = np.pi * rng.dirichlet(np.ones(4), size=20_000)
inside = np.mean([in_Ay_plus(x, c) for x in xs])
print(f"fraction of the alcove inside A_y^+: {inside:.3f}")
