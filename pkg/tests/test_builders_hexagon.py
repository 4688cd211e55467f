import pytest

from cubemedian.builders.hexagon import (FAILED, VERIFIED, FPresentation, SquareComplexPresentation,
                                         commutator, eliminate_generators, hexagon_complex,
                                         hexagon_display, hexagon_isomorphism, letters, npc_link_check,
                                         pi1_presentation, raag_fpresentation, reduce_to_identity,
                                         salvetti_complex, same_cyclic_word, tietze_verify)
from cubemedian.presentations import DefiningGraph, complete_graph, cycle_graph


def test_c0_is_salvetti_complex(hexagon_graph):
    c = hexagon_complex(0)
    assert len(c.squares) == 6
    sal = salvetti_complex(cycle_graph([f"a{i}" for i in range(1, 7)]))
    assert len(sal.squares) == 6
    for sq in c.squares:
        assert any(same_cyclic_word(sq, t) or same_cyclic_word(sq, tuple((l, -e) for l, e in reversed(t)))
                   for t in sal.squares)


def test_c3_counts():
    c = hexagon_complex(3)
    assert len(c.squares) == 9
    assert c.labels == ["a1", "a2", "a3", "a4", "a5", "a6", "e1", "e2", "e3"]


@pytest.mark.parametrize("n", range(9))
def test_square_count_and_npc(n):
    c = hexagon_complex(n)
    assert len(c.squares) == n + 6
    assert npc_link_check(c).ok


@pytest.mark.parametrize("n", [0, 1, 2, 4])
def test_staircase_elimination_recovers_display(n):
    p = eliminate_generators(pi1_presentation(hexagon_complex(n)), [f"e{i}" for i in range(1, n + 1)])
    want = hexagon_display(n)
    assert p.generators == want.generators
    assert len(p.relators) == len(want.relators)
    for r in want.relators:
        assert any(same_cyclic_word(r, q) or same_cyclic_word(r, tuple((l, -e) for l, e in reversed(q)))
                   for q in p.relators)


def test_bigon_fails():
    c = SquareComplexPresentation(["a", "b"], [commutator("a", "b"), commutator("a", "b")])
    chk = npc_link_check(c)
    assert not chk.ok and "bigon" in chk.reason


def test_triangle_salvetti_passes_and_bare_triangle_fails():
    tri = complete_graph("abc")
    assert npc_link_check(salvetti_complex(tri)).ok
    bare = SquareComplexPresentation(list("abc"), [commutator(u, v) for u, v in ("ab", "bc", "ac")])
    assert not npc_link_check(bare).ok


def test_identity_substitution():
    g = cycle_graph([f"a{i}" for i in range(1, 7)])
    p = raag_fpresentation(g)
    ident = {x: x for x in p.generators}
    assert tietze_verify(p, p, ident, ident).status == VERIFIED


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hexagon_isomorphism_verified(n):
    src, tgt, phi, psi = hexagon_isomorphism(n)
    rep = tietze_verify(src, tgt, phi, psi)
    assert rep.status == VERIFIED
    used = frozenset().union(*(d.relators_used for d in rep.forward))
    a2a3 = commutator("a2", "a3")
    idx = next(i for i, r in enumerate(tgt.relators) if same_cyclic_word(r, a2a3))
    assert idx in used


def test_wrong_substitution_fails_on_x6_x1():
    src, tgt, phi, _ = hexagon_isomorphism(2)
    bad = dict(phi, x1=letters("a1 a2"))
    rep = tietze_verify(src, tgt, bad)
    assert rep.status == FAILED
    assert same_cyclic_word(rep.failed_relator, commutator("x6", "x1")) or \
        same_cyclic_word(rep.failed_relator, commutator("x1", "x6"))
    assert rep.quotient is not None


def test_reduce_simple_word():
    p = FPresentation(["a", "b"], [commutator("a", "b")])
    assert reduce_to_identity(p, letters("a b a^-1 b^-1")).status == VERIFIED
