"""Davis/Salvetti Cayley balls and the coset complex of a graph product."""

from __future__ import annotations

from dataclasses import dataclass

from .. import config
from ..errors import InputError, ResourceError
from ..median_core import CubeBall
from ..presentations import (GRAPH_PRODUCT, RAAG, RACG, GroupPresentation, _from_key, engine,
                             enumerate_ball, format_word, graph_product, multiply, normalize,
                             special_coset_membership)


def standard_ball(pres: GroupPresentation, radius: int, budget=None) -> CubeBall:
    """Cayley ball with a square for every commuting pair of generator edges."""
    if pres.kind not in (RACG, RAAG):
        raise InputError("standard_ball needs a RACG or RAAG presentation")
    eng = engine(pres, budget)
    keys, _, edges = enumerate_ball(pres, radius, budget)
    index = {k: i for i, k in enumerate(keys)}
    gens = eng.generators()
    squares = {}
    for k in keys:
        for a in range(len(gens)):
            for b in range(a + 1, len(gens)):
                x, y = gens[a], gens[b]
                if x[0] == y[0] or not (eng.adj[x[0]] >> y[0]) & 1:
                    continue
                gx = eng.normal(list(k) + [x])
                gy = eng.normal(list(k) + [y])
                gxy = eng.normal(list(gx) + [y])
                ids = [index.get(t) for t in (k, gx, gxy, gy)]
                if None in ids:
                    continue
                key = frozenset(ids)
                if key not in squares:
                    squares[key] = tuple(ids)
    words = [_from_key(pres, k) for k in keys]
    return CubeBall(
        labels=[format_word(w) for w in words],
        edges=edges,
        base=0,
        radius=radius,
        squares=sorted(squares.values()),
        payload=words,
        median_host=True,
        kind=f"standard:{pres.kind}",
    )


# --------------------------------------------------------------------------
# graph-product coset complex

def _as_graph_product(pres: GroupPresentation) -> GroupPresentation:
    if pres.kind == GRAPH_PRODUCT:
        return pres
    if pres.kind == RACG:
        return graph_product(pres.graph, {v: 2 for v in pres.labels})
    raise InputError("graph_product_ball needs finite vertex groups")


@dataclass(frozen=True)
class Coset:
    """Vertex gG_c of the graph-product complex (g a minimal coset representative)."""

    rep: tuple      # canonical word of g
    clique: frozenset

    def label(self, order) -> str:
        if not self.clique:
            return format_word(self.rep)
        c = ",".join(sorted(self.clique, key=order.get))
        g = "" if not self.rep else format_word(self.rep) + "·"
        return f"{g}G[{c}]"


class _CosetCalculus:
    def __init__(self, pres: GroupPresentation):
        self.pres = pres
        self.eng = engine(pres)
        self.order = {v: i for i, v in enumerate(pres.labels)}

    def canonical(self, key: tuple, clique: frozenset):
        """Strip syllables from ``clique`` that can be moved to the right end."""
        syl = list(key)
        cidx = {self.order[v] for v in clique}
        adj = self.eng.adj
        changed = True
        while changed:
            changed = False
            for j in range(len(syl) - 1, -1, -1):
                v = syl[j][0]
                if v not in cidx:
                    continue
                if all(syl[t][0] != v and (adj[v] >> syl[t][0]) & 1 for t in range(j + 1, len(syl))):
                    del syl[j]
                    changed = True
                    break
        return self.eng.canonical(syl), clique

    def neighbors(self, key, clique):
        g = self.pres.graph
        out = []
        for v in self.pres.labels:
            if v in clique:
                continue
            if all(g.adjacent(v, w) for w in clique):
                out.append((self.canonical(key, clique | {v}), v))
        for w in clique:
            i = self.order[w]
            k = self.eng.order[i]
            smaller = clique - {w}
            for e in range(k):
                nk = self.eng.normal(list(key) + ([(i, e)] if e else []))
                out.append((self.canonical(nk, smaller), w))
        return out


def graph_product_ball(pres: GroupPresentation, radius: int, budget=None) -> CubeBall:
    """Ball around 1·G_∅ in the cube complex whose vertices are cosets gG_c.

    Edges join gG_c to gG_{c+v}; the edge label is the added vertex v.
    """
    pres = _as_graph_product(pres)
    if radius < 0:
        raise InputError("radius must be non-negative")
    limit = config.state_budget(budget)
    calc = _CosetCalculus(pres)
    start = ((), frozenset())
    index = {start: 0}
    verts = [start]
    edges = {}
    frontier = [start]
    for r in range(radius + 1):
        nxt = []
        for node in frontier:
            for nb, lab in calc.neighbors(*node):
                if nb not in index:
                    if r == radius:
                        continue
                    index[nb] = len(verts)
                    verts.append(nb)
                    nxt.append(nb)
                    if len(verts) > limit:
                        raise ResourceError(f"coset ball exceeded {limit} states at radius {r + 1}",
                                            partial={"reached_radius": r})
                i, j = index[node], index[nb]
                edges.setdefault((min(i, j), max(i, j)), lab)
        frontier = nxt
    cosets = [Coset(_from_key(pres, k), frozenset(c)) for k, c in verts]
    return CubeBall(
        labels=[c.label(calc.order) for c in cosets],
        edges=[(i, j, l) for (i, j), l in sorted(edges.items())],
        base=0,
        radius=radius,
        payload=cosets,
        median_host=True,
        kind="graph_product",
        meta={"presentation": pres},
    )


def coset_of(pres: GroupPresentation, word, clique) -> Coset:
    """Canonical coset ``word·G_clique``."""
    pres = _as_graph_product(pres)
    calc = _CosetCalculus(pres)
    key = calc.eng.normal([(calc.order[l], e) for l, e in normalize(pres, word)])
    k, c = calc.canonical(key, frozenset(clique))
    return Coset(_from_key(pres, k), c)


def act_on_coset(pres: GroupPresentation, h, coset: Coset) -> Coset:
    return coset_of(pres, multiply(pres, h, coset.rep), coset.clique)


@dataclass
class StabilizerRecord:
    class_id: int
    edge: tuple            # (lower coset, upper coset)
    vertex: str            # the vertex v with upper clique = lower clique + v
    conjugator: tuple      # g with edge [gG_c, gG_{c+v}]
    tested: int            # number of decided group elements
    computed: frozenset    # h with h·edge in the same in-ball class
    predicted: frozenset   # h with g^-1 h g in G_lk(v)

    @property
    def agrees(self) -> bool:
        return self.computed == self.predicted


def graph_product_stabilizers(pres: GroupPresentation, radius: int, budget=None) -> list:
    """Compare in-ball hyperplane stabilizers with conjugates of link subgroups.

    Every class with an edge strictly inside the shell is examined through
    its edge closest to the base. Classes are whole hyperplanes intersected
    with the ball (balls of median graphs are isometric), so a class may
    touch the shell and still be tested. Group elements h with 2|h| <= radius
    are tested when h maps that edge into the ball; h stabilizes the class
    iff the image edge lies in the same class.
    """
    pres = _as_graph_product(pres)
    ball = graph_product_ball(pres, radius, budget)
    keys, _, _ = enumerate_ball(pres, radius // 2, budget)
    elements = [_from_key(pres, k) for k in keys]
    g = pres.graph
    records = []
    db = ball.dist_base
    for cl in ball.theta:
        e0 = min(cl.edges, key=lambda e: (max(db[ball.eu[e]], db[ball.ev[e]]), e))
        if max(db[ball.eu[e0]], db[ball.ev[e0]]) >= radius:
            continue
        a, b = int(ball.eu[e0]), int(ball.ev[e0])
        ca, cb = ball.payload[a], ball.payload[b]
        lower, upper = (ca, cb) if len(ca.clique) < len(cb.clique) else (cb, ca)
        (v,) = tuple(upper.clique - lower.clique)
        conj = lower.rep
        link = g.link(v)
        computed, predicted = set(), set()
        tested = 0
        for h in elements:
            x = act_on_coset(pres, h, lower)
            y = act_on_coset(pres, h, upper)
            if not (ball.contains(x) and ball.contains(y)):
                continue
            tested += 1
            i, j = ball.vid(x), ball.vid(y)
            if ball.has_edge(i, j) and ball.edge_class[ball.edge_id(i, j)] == cl.id:
                computed.add(h)
            inner = multiply(pres, _inv(conj), h, conj)
            if special_coset_membership(pres, inner, link):
                predicted.add(h)
        records.append(StabilizerRecord(cl.id, (lower, upper), v, conj, tested,
                                        frozenset(computed), frozenset(predicted)))
    return records


def _inv(w):
    return tuple((l, -e) for l, e in reversed(w))
