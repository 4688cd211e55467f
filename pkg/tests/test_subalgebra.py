import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cubemedian.builders.tilings import grid_window, point_id, product_window, tree_window
from cubemedian.errors import InputError, StructuralError
from cubemedian.median_core import CONVEX, CubeBall, classify_subset, generate_subalgebra
from cubemedian.subalgebra import (ChainWitness, GridWitness, analyze_subalgebra, bridge,
                                   carrier_density, carriers, chain_witness, find_grid,
                                   max_grid, metric_agreement, minimal_geodesic_alpha,
                                   qc_profile, subalgebra_dual, verify_grid)

import oracles

H = 6


@pytest.fixture(scope="module")
def grid():
    return grid_window(2, H)


@pytest.fixture(scope="module")
def stair(grid):
    return analyze_subalgebra(grid, [point_id(grid, p) for p in oracles.staircase(H)])


def xcls(k, h=H):
    """Class of the wall between x = k and x = k + 1; plus side x > k."""
    return k + h


def ycls(k, h=H):
    return 2 * h + k + h


def ids(g, pts):
    return {point_id(g, p) for p in pts}


# -- views -----------------------------------------------------------------

def test_l_shaped_path(grid):
    pts = [(x, 0) for x in range(4)] + [(3, y) for y in range(1, 4)]
    v = analyze_subalgebra(grid, [point_id(grid, p) for p in pts])
    assert v.edge_connected and v.res_injective
    assert len(v.walls_of_M) == 6


def test_two_far_points(grid):
    v = analyze_subalgebra(grid, [point_id(grid, (0, 0)), point_id(grid, (2, 0))])
    assert not v.edge_connected and not v.res_injective
    assert len(v.res) == 2 and len(v.walls_of_M) == 1


def test_whole_host_res_is_identity():
    g = grid_window(2, 2)
    v = analyze_subalgebra(g, range(g.n))
    assert len(v.walls_of_M) == len(g.theta)
    assert sorted(w for w, _ in v.res.values()) == list(range(len(g.theta)))
    assert all(o == 1 or o == -1 for _, o in v.res.values())


def test_non_subalgebra_raises(grid):
    with pytest.raises(StructuralError) as exc:
        analyze_subalgebra(grid, [point_id(grid, p) for p in [(0, 0), (1, 1), (2, 0)]])
    assert exc.value.witness


# -- carriers --------------------------------------------------------------

def strip(h=4):
    pts = [(x, y) for x in range(-h, h + 1) for y in (0, 1)]
    index = {p: i for i, p in enumerate(pts)}
    edges = [(index[(x, y)], index[(x + 1, y)]) for x in range(-h, h) for y in (0, 1)]
    edges += [(index[(x, 0)], index[(x, 1)]) for x in range(-h, h + 1)]
    return CubeBall([f"({x},{y})" for x, y in pts], edges, base=index[(0, 0)],
                    median_host=True, exact=True), index


def test_strip_carriers():
    S, index = strip()
    M = [index[(x, 0)] for x in range(-4, 5)] + [index[(0, 1)]]
    v = analyze_subalgebra(S, M)
    assert v.edge_connected
    rung = int(S.edge_class[S.edge_id(index[(0, 0)], index[(0, 1)])])
    w, _ = v.res[rung]
    c_m, c_x = carriers(v, w)
    assert c_m == {index[(0, 0)], index[(0, 1)]}
    assert c_x == set(M)


def test_convex_carriers_agree(grid):
    box = [point_id(grid, (x, y)) for x in range(3) for y in range(2)]
    v = analyze_subalgebra(grid, box)
    for w in range(len(v.walls_of_M)):
        c_m, c_x = carriers(v, w)
        assert c_m == c_x
    assert carrier_density(v) == 0


def test_staircase_carriers(grid, stair):
    for k in range(-H, H):
        w, _ = stair.res[xcls(k)]
        c_m, c_x = carriers(stair, w)
        assert c_m == ids(grid, [(k, k), (k + 1, k)])
        assert c_m <= c_x
    with pytest.raises(InputError):
        carriers(stair, 999)


# -- grids -----------------------------------------------------------------

def test_hand_built_grid_verifies(grid, stair):
    n = 3
    w = GridWitness(n, [(xcls(i), 1) for i in range(n + 1)],
                    [(ycls(-i - 1), -1) for i in range(n + 1)], -1, 0, {})
    far, d = verify_grid(stair, w)
    assert d > n
    x, y = (int(c) for c in grid.labels[far].strip("()").split(","))
    assert x >= n + 1 and y <= -n - 1


def test_found_grids_verify(stair):
    for n in range(4):
        w = find_grid(stair, n)
        assert w is not None and w.n == n
        _, d = verify_grid(stair, w)
        assert d >= n + 1
        assert w.center_distance >= n + 1
        assert set(w.covering_certificate) == stair.members
    assert max_grid(stair) == H - 1


def test_n0_pair_on_staircase(grid, stair):
    w = find_grid(stair, 0)
    (h,), (k,) = w.h_chain, w.k_chain
    assert grid.crossing[h[0], k[0]]
    assert not (stair.mask & grid.halfspace_mask(h) & grid.halfspace_mask(k)).any()


def test_bad_grid_rejected(stair):
    w = GridWitness(1, [(xcls(1), 1), (xcls(0), 1)], [(ycls(-1), -1), (ycls(-2), -1)], -1, 0, {})
    with pytest.raises(StructuralError):
        verify_grid(stair, w)


def test_convex_has_no_grid(grid):
    v = analyze_subalgebra(grid, [point_id(grid, (x, 0)) for x in range(-3, 4)])
    assert all(find_grid(v, n) is None for n in range(4))
    assert max_grid(v) == -1


def test_disconnected_rejected(grid):
    v = analyze_subalgebra(grid, [point_id(grid, (0, 0)), point_id(grid, (2, 0))])
    with pytest.raises(InputError):
        find_grid(v, 0)


# -- profiles --------------------------------------------------------------

def test_axis_profile_is_zero(grid):
    v = analyze_subalgebra(grid, [point_id(grid, (x, 0)) for x in range(-H, H + 1)])
    assert qc_profile(v, 8)["escape"] == [0] * 9


def test_staircase_profile(stair):
    prof = qc_profile(stair, 4 * H)
    esc = prof["escape"]
    assert esc[0] == 0
    assert all(a <= b for a, b in zip(esc, esc[1:]))
    for k in range(1, H // 2 + 1):
        assert esc[4 * k] >= k


# -- bridges ---------------------------------------------------------------

@pytest.fixture(scope="module")
def line():
    g = grid_window(1, 3)
    return g, analyze_subalgebra(g, range(g.n))


def test_path_bridge(line):
    g, v = line
    hM = v.restrict((xcls(2, 3), 1))        # t >= 3
    kM = v.restrict((xcls(0, 3), -1))       # t <= 0
    b = bridge(v, hM, kM)
    assert b.vertices == ids(g, [(1,), (2,)])
    assert (b.p, b.q) == (point_id(g, (1,)), point_id(g, (2,)))
    assert b.distance == 1


def test_adjacent_walls_bridge(line):
    g, v = line
    b = bridge(v, v.restrict((xcls(1, 3), 1)), v.restrict((xcls(0, 3), -1)))
    assert b.vertices == {point_id(g, (1,))} and b.distance == 0


def test_overlapping_halfspaces_rejected(line):
    _, v = line
    with pytest.raises(InputError):
        bridge(v, v.restrict((xcls(0, 3), 1)), v.restrict((xcls(1, 3), 1)))


def test_tree_bridge_is_geodesic():
    t = tree_window(3, 3)
    v = analyze_subalgebra(t, range(t.n))
    D = oracles.all_distances(oracles.adjacency(t.n, zip(t.eu.tolist(), t.ev.tolist())))
    for a, b in itertools.combinations(range(len(t.theta)), 2):
        A, B = v.m_halfspace((a, 1)), v.m_halfspace((b, 1))
        for sa, sb in itertools.product((1, -1), repeat=2):
            if v.m_halfspace((a, sa)) & v.m_halfspace((b, sb)):
                continue
            br = bridge(v, (a, sa), (b, sb))
            assert br.vertices == oracles.interval(D, br.p, br.q)
            break


# -- the minimal geodesic --------------------------------------------------

def test_staircase_alpha(grid, stair):
    rep = minimal_geodesic_alpha(stair, (xcls(0), 1), (ycls(-2), -1))
    assert rep.minimal and rep.exhaustive
    assert rep.transverse_ok and rep.disjoint_ok
    assert all(length == 1 for _, length in rep.segments)
    kinds = [k for k, _ in rep.segments]
    assert all(a != b for a, b in zip(kinds, kinds[1:]))
    assert all(c < 2 * H for c, _ in rep.omega_perp)
    assert all(c >= 2 * H for c, _ in rep.omega_parallel)


def all_geodesics(adj, members, D, p, q):
    out = []

    def go(path):
        v = path[-1]
        if v == q:
            out.append(list(path))
            return
        for w in sorted(adj[v]):
            if w in members and D[p][w] == len(path) and D[w][q] == D[p][q] - len(path):
                go(path + [w])
    go([p])
    return out


def random_alpha_cases(seed, tries=30):
    rng = random.Random(seed)
    g = grid_window(2, 4)
    adj = oracles.adjacency(g.n, zip(g.eu.tolist(), g.ev.tolist()))
    D = oracles.all_distances(adj)
    for _ in range(tries):
        A = rng.sample(range(g.n), rng.randint(2, 5))
        S, _, _ = generate_subalgebra(g, A)
        v = analyze_subalgebra(g, S)
        if not v.edge_connected:
            continue
        cl = v.hm_classes
        for a, b in itertools.combinations(cl, 2):
            if not g.crossing[a, b]:
                continue
            for sa, sb in itertools.product((1, -1), repeat=2):
                if (v.mask & g.halfspace_mask((a, sa)) & g.halfspace_mask((b, sb))).any():
                    continue
                yield g, adj, D, v, (a, sa), (b, sb)


@given(st.integers(0, 10_000))
def test_alpha_against_enumeration(seed):
    for g, adj, D, v, h, k in itertools.islice(random_alpha_cases(seed), 6):
        rep = minimal_geodesic_alpha(v, h, k)
        assert rep.transverse_ok and rep.disjoint_ok
        paths = all_geodesics(adj, v.members, D, rep.p, rep.q)
        dk = g.distance_to_set(g.halfspace_mask(k))
        best = min([int(dk[x]) for x in p] for p in paths)
        assert rep.path in paths
        assert rep.profile == best
        assert sum(l for _, l in rep.segments) == len(rep.path) - 1
        if rep.segments:
            assert rep.k_observed == max(l for _, l in rep.segments)


def test_alpha_preconditions(stair):
    with pytest.raises(InputError):
        minimal_geodesic_alpha(stair, (xcls(0), 1), (xcls(2), 1))
    with pytest.raises(InputError):
        minimal_geodesic_alpha(stair, (xcls(0), 1), (ycls(0), 1))


# -- chains ----------------------------------------------------------------

def brute_chains(h, k, n, sup):
    N = len(h)
    good = set()
    for a in range(N):
        ups = [c for c in itertools.combinations(range(a), n)
               if all(sup(h[c[t]], h[c[t + 1]]) for t in range(n - 1)) and (not c or sup(h[c[-1]], h[a]))]
        downs = [c for c in itertools.combinations(range(a + 1, N), n)
                 if (not c or sup(k[a], k[c[0]])) and all(sup(k[c[t]], k[c[t + 1]]) for t in range(n - 1))]
        if ups and downs:
            good.add(a)
    return good


def sup(a, b):
    return frozenset(b) < frozenset(a)


def test_staircase_sequences():
    U = range(-2, 10)
    h = [frozenset(x for x in U if x >= i) for i in range(5)]
    k = [frozenset(y for y in U if y >= i) for i in range(5)]
    w = chain_witness(h, k, 1, 2)
    assert isinstance(w, ChainWitness)
    assert w.k in brute_chains(h, k, 1, sup)
    assert all(sup(h[i], h[w.k]) for i in w.i_indices)
    assert all(sup(k[w.k], k[j]) for j in w.j_indices)


def test_chain_boundaries():
    h = [frozenset({i}) for i in range(4)]
    w = chain_witness(h, h, 0, 2)
    assert w and w.k == 0 and w.i_indices == [] and w.j_indices == []
    r = chain_witness(h, h, 1, 2)
    assert not r and r.reason == "precondition"
    with pytest.raises(InputError):
        chain_witness(h, h[:2], 0, 1)


@given(st.integers(0, 10_000))
def test_chain_witness_matches_brute_force(seed):
    rng = random.Random(seed)
    N = rng.randint(3, 9)
    U = range(6)
    h = [frozenset(x for x in U if rng.random() < 0.5) for _ in range(N)]
    k = [frozenset(x for x in U if rng.random() < 0.5) for _ in range(N)]
    n = rng.randint(0, 2)
    w = chain_witness(h, k, n, 1)
    if N <= 2 * n:
        assert not w and w.reason == "precondition"
        return
    good = brute_chains(h, k, n, sup)
    if w:
        assert w.k == min(good)
        chain_h = w.i_indices + [w.k]
        chain_k = [w.k] + w.j_indices
        assert all(sup(h[a], h[b]) for a, b in zip(chain_h, chain_h[1:]))
        assert all(sup(k[a], k[b]) for a, b in zip(chain_k, chain_k[1:]))
    else:
        assert not good and w.reason == "no witness"


# -- invariants on random subalgebras ---------------------------------------

HOSTS = [lambda: grid_window(2, 3), lambda: product_window(tree_window(3, 2), tree_window(2, 3)),
         lambda: grid_window(3, 1)]


@given(st.integers(0, 10_000))
def test_injectivity_metric_and_grids(seed):
    rng = random.Random(seed)
    g = HOSTS[seed % len(HOSTS)]()
    A = rng.sample(range(g.n), rng.randint(1, 5))
    S, cert, _ = generate_subalgebra(g, A)
    assert cert.ok
    v = analyze_subalgebra(g, S)
    assert v.res_injective == v.edge_connected
    if v.edge_connected:
        assert metric_agreement(v) == []
        convex = classify_subset(g, S)[0] == CONVEX
        w = find_grid(v, 0)
        assert (w is None) == convex
        for n in range(3):
            w = find_grid(v, n)
            if w is None:
                break
            _, d = verify_grid(v, w)
            assert d > n


def test_dual_of_staircase_is_path(stair):
    D = subalgebra_dual(stair)
    assert D.n == len(stair.members)
    assert D.m == D.n - 1
