import itertools

import pytest

from cubemedian.builders.cayley import graph_product_ball, graph_product_stabilizers, standard_ball
from cubemedian.errors import InputError
from cubemedian.median_core import is_median_graph
from cubemedian.presentations import (DefiningGraph, coxeter, graph_product, normalize, raag, racg)

import oracles


def test_one_vertex_racg():
    B = standard_ball(racg(DefiningGraph(["a"], [])), 1)
    assert (B.n, B.m, len(B.squares)) == (2, 1, 0)


def test_pentagon_ball_counts(pentagon, pentagon_graph):
    B = standard_ball(pentagon, 2)
    edges = {frozenset(e) for e in pentagon_graph.edges}
    mats = oracles.tits_matrices(list("abcde"), oracles.racg_matrix(list("abcde"), edges))
    assert B.n == len(oracles.matrix_ball(mats, 2)) == 21
    at_base = [sq for sq in B.squares if B.base in sq]
    assert len(at_base) == 5
    assert is_median_graph(B)


def test_hexagon_raag_unit_ball(hexagon_graph):
    B = standard_ball(raag(hexagon_graph), 1)
    assert B.n == 13
    assert sorted(B.labels)[:1] == ["1"]


def test_standard_ball_rejects_coxeter():
    with pytest.raises(InputError):
        standard_ball(coxeter("st", [[1, 3], [3, 1]]), 1)


def test_free_product_coset_ball():
    gp = graph_product(DefiningGraph(["a", "b"], []), {"a": 2, "b": 3})
    B = graph_product_ball(gp, 1)
    assert B.n == 3
    assert set(B.labels) == {"1", "G[a]", "G[b]"}


def test_single_vertex_coset_ball():
    gp = graph_product(DefiningGraph(["a"], []), {"a": 2})
    assert sorted(graph_product_ball(gp, 1).labels) == ["1", "G[a]"]
    assert graph_product_ball(gp, 2).n == 3


@pytest.mark.parametrize("R", [2, 3, 4])
def test_coset_ball_is_subdivided_davis_ball(pentagon, pentagon_graph, R):
    """Cells (g, clique c) with g minimal in gW_c and 2ℓ(g)+|c| ≤ R."""
    davis = standard_ball(pentagon, R)
    cliques = [c for c in pentagon_graph.cliques()] + [frozenset()]
    cliques = {frozenset(c) for c in cliques}
    count = 0
    for v in range(davis.n):
        g = davis.payload[v]
        d = int(davis.dist_base[v])
        for c in cliques:
            if 2 * d + len(c) > R:
                continue
            if all(len(normalize(pentagon, list(g) + [(s, 1)])) > d for s in c):
                count += 1
    assert graph_product_ball(pentagon, R).n == count


@pytest.mark.parametrize("orders", [{v: 2 for v in "abcde"}, {"a": 2, "b": 3, "c": 2, "d": 3, "e": 2}])
def test_stabilizers_are_conjugate_link_groups(pentagon_graph, orders):
    recs = graph_product_stabilizers(graph_product(pentagon_graph, orders), 4)
    assert recs
    assert all(r.tested > 0 and r.agrees for r in recs)


def test_coset_ball_is_median():
    gp = graph_product(DefiningGraph(["a", "b", "c"], [("a", "b")]), {"a": 2, "b": 3, "c": 2})
    B = graph_product_ball(gp, 4)
    assert is_median_graph(B)
    for x, y in itertools.combinations(range(min(B.n, 8)), 2):
        assert B.d(x, y) == B.d(y, x)
