from fractions import Fraction

import numpy as np
import pytest

from cubemedian.builders.tilings import (Affine, AffineAction, action_333, act, dinf2_rotated,
                                         dinf2_standard, grid_window, group_closure, orbit_closure,
                                         path_orbit, point_id, reflections_333, tiling_window,
                                         translation_action, window_relation_holds)
from cubemedian.errors import InputError


def test_identity_action_is_plain_grid():
    W = tiling_window(None, 2, n=2)
    G = grid_window(2, 2)
    assert W.n == G.n == 25 and W.m == G.m == 40
    assert len(W.theta) == 8


def test_333_relations():
    A = action_333()
    assert all(A.check_relations().values())
    rho, sigma = A.generators["rho"], A.generators["sigma"]
    assert len(group_closure([rho, sigma])) == 6
    T0 = A.generators["T0"]
    for g in ("rho", "sigma", "T1"):
        h = A.generators[g]
        assert T0 * h == h * T0
    W = tiling_window(A, 8)
    for rel in A.relations_declared:
        assert window_relation_holds(W, rel)


def test_333_reflections():
    r = reflections_333()
    one = Affine.identity(3)
    for a in r.values():
        assert a * a == one
        assert a != one
    for a, b in (("r1", "r2"), ("r1", "r3"), ("r2", "r3")):
        assert (r[a] * r[b]) ** 3 == one
        assert r[a] * r[b] != one


@pytest.mark.parametrize("make", [dinf2_standard, dinf2_rotated])
def test_dinf2_actions(make):
    A = make()
    assert all(A.check_relations().values())
    W = tiling_window(A, 16)
    assert W.n == 33 ** 2
    for rel in A.relations_declared:
        assert window_relation_holds(W, rel)


def test_action_tables_are_partial_bijections():
    W = tiling_window(dinf2_rotated(), 5)
    for name, table in W.meta["action"].items():
        img = table[table >= 0]
        assert len(set(img.tolist())) == len(img)
        inv = W.meta["action"][name[:-3] if name.endswith("^-1") else name + "^-1"]
        for v in np.flatnonzero(table >= 0):
            assert inv[table[v]] == v


def test_rational_translation_needs_refinement():
    half = Affine.make([[1]], (Fraction(1, 2),))
    with pytest.raises(InputError):
        AffineAction(1, {"t": half})
    W = tiling_window(AffineAction(1, {"t": half}, q=2), 4)
    assert act(W, "t", [point_id(W, (0,))]) == [point_id(W, (1,))]


def test_orbits_of_translations():
    G = grid_window(2, 4)
    line = orbit_closure(G, [G.base], names=["e1"])
    assert line == frozenset(point_id(G, (x, 0)) for x in range(-4, 5))
    diag = path_orbit(G, ["e1 e2"], cyclic=True)
    assert point_id(G, (1, 1)) in diag and point_id(G, (-4, -4)) in diag
    assert len(diag) == 9 + 8


def test_precompose_changes_generators():
    A = translation_action(2).precompose([[1, 1], [1, -1]])
    assert A.generators["e1"].t == (1, 1)
    assert A.generators["e2"].t == (1, -1)
