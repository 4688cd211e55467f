"""A monotone staircase in the square grid: median-closed but far from convex.

Builds the box window of Z^2, takes the staircase hugging the diagonal, and
shows the growing grid witnesses, the escape profile, and the geodesic
distance between its two extreme wall pairs.

    python demos/staircase.py [halfwidth]
"""

import sys

from cubemedian.builders.tilings import grid_window, point_id
from cubemedian.median_core import classify_subset
from cubemedian.subalgebra import (analyze_subalgebra, find_grid, minimal_geodesic_alpha,
                                   qc_profile, subalgebra_dual, verify_grid)

H = int(sys.argv[1]) if len(sys.argv) > 1 else 16


def staircase(h):
    x = y = -h
    pts = [(x, y)]
    while (x, y) != (h, h):
        if x == y:
            x += 1
        else:
            y += 1
        pts.append((x, y))
    return pts


G = grid_window(2, H)
M = [point_id(G, p) for p in staircase(H)]
verdict, *_ = classify_subset(G, M)
print(f"window [-{H},{H}]^2: {G.n} vertices; staircase of {len(M)} points is {verdict}")

view = analyze_subalgebra(G, M)
print(f"walls crossing the staircase: {len(view.walls_of_M)}, "
      f"edge-connected={view.edge_connected}, restriction injective={view.res_injective}")

# Grid witnesses: two chains of nested halfspaces, every pair transverse,
# whose corner points sit far from M.
for n in range(0, 6):
    w = find_grid(view, n)
    verify_grid(view, w)
    print(f"  n={n}: h {w.h_chain[0]}..{w.h_chain[-1]}, k {w.k_chain[0]}..{w.k_chain[-1]}, "
          f"centre {G.labels[w.center]} at distance {w.center_distance} from M")

prof = qc_profile(view, 4 * (H // 4))
print("escape(L) at L = 0, 4, 8, ...:", prof["escape"][::4])

# The staircase dual is itself a median graph, here just a path.
D = subalgebra_dual(view)
print(f"dual: {D.n} vertices, {D.m} edges")

# Class ids in a box window: axis * 2H + level + H, plus side beyond the level.
h = (0 * 2 * H + 0 + H, 1)       # x > 0
k = (1 * 2 * H - 2 + H, -1)      # y <= -2
rep = minimal_geodesic_alpha(view, h, k)
print(f"minimal geodesic from x>0 towards y<=-2: segments {rep.segments}, "
      f"longest run {rep.k_observed}, exhaustive={rep.exhaustive}")
