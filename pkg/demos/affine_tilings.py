"""Groups acting on cubical tilings of R^n by affine maps.

Loads three actions from demos/inputs, checks their relations on a finite
box, and compares orbits of the same abstract group under two different
cubulations of the plane.

    python demos/affine_tilings.py
"""

import json
from pathlib import Path

from cubemedian.builders.tilings import (AffineAction, path_orbit, reflections_333,
                                         tiling_window, window_relation_holds)
from cubemedian.classification import dinf_classify, virtual_basis_of_matrix
from cubemedian.median_core import classify_subset

HERE = Path(__file__).parent / "inputs"


def load(name):
    return AffineAction.from_json(json.loads((HERE / f"{name}.json").read_text()))


# A lattice extension of the (3,3,3) triangle group acting on Z^3.
act = load("action333")
W = tiling_window(act, 3)
print(f"action333 on [-3,3]^3: {W.n} vertices")
for rel in act.relations_declared:
    print(f"  {rel:<24} holds on the window: {window_relation_holds(W, rel)}")
for name, r in reflections_333(act).items():
    print(f"  reflection {name}: M={[list(map(int, row)) for row in r.M]} t={[str(x) for x in r.t]}")

# D∞ × D∞ twice: once by axis reflections, once rotated by 45 degrees.
for name in ("dinf2_standard", "dinf2_rotated"):
    act = load(name)
    images = [[list(r) for r in act.generators[g].M] for g in ("a", "b")]
    k = dinf_classify(images).k
    W = tiling_window(act, 16)
    M = path_orbit(W, ["a", "c"], names=["a", "c"])
    verdict = classify_subset(W, M)[0]
    print(f"\n{name}: {k} rotated block(s); <a, c>-orbit of a geodesic is {verdict}")

# Translations by the columns of A. In generator coordinates, (1,1) and (1,-1)
# are the directions A sends to axis-parallel vectors, so their orbits are convex.
A = [[1, 1], [1, -1]]
print("\nvirtual basis of", A, "->", virtual_basis_of_matrix(A).vectors)
