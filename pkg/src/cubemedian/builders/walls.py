"""Walls of Coxeter presentation complexes and the cube complex dual to a wallspace."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .. import config
from ..errors import InputError, ResourceError, StructuralError
from ..median_core import CubeBall
from ..presentations import (COXETER, INF, GroupPresentation, _from_key, engine, enumerate_ball,
                             format_word)


@dataclass
class Wall:
    id: int
    edges: tuple                 # edge ids of the radius ball
    plus: np.ndarray = field(repr=False)   # points on the far side from the base
    reflection: tuple = ()       # canonical key of g s g⁻¹
    split: bool = False          # another in-ball class has the same reflection

    @property
    def reflection_word(self):
        return self.reflection


@dataclass
class WallSystem:
    """Points of a window together with walls given as bipartitions of them."""

    ball: CubeBall
    walls: list
    cells: list = field(default_factory=list)      # vertex-id cycles of the 2m-gons
    pres: GroupPresentation | None = None
    meta: dict = field(default_factory=dict)

    def wall_of_edge(self, e):
        for w in self.walls:
            if e in w.edges:
                return w.id
        return None

    def to_json(self) -> dict:
        return {
            "points": self.ball.labels,
            "walls": [{"id": w.id, "edges": list(w.edges), "split": w.split,
                       "far_side": np.flatnonzero(w.plus).tolist()} for w in self.walls],
        }


def _union_find(n):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    return find, union


class _CoxeterWindow:
    """Cayley ball with 2m-gon cells and the opposite-edge relation."""

    def __init__(self, pres, radius, budget):
        self.pres = pres
        self.eng = engine(pres, budget)
        keys, lengths, edges = enumerate_ball(pres, radius, budget)
        self.keys = keys
        self.index = {k: i for i, k in enumerate(keys)}
        self.length = np.array([lengths[k] for k in keys], dtype=np.int64)
        self.edge_index = {}
        self.edge_gen = []
        for i, j, lab in edges:
            key = (min(i, j), max(i, j))
            if key not in self.edge_index:
                self.edge_index[key] = len(self.edge_gen)
                self.edge_gen.append((key[0], key[1], lab))
        labels = pres.labels
        m = pres.coxeter_matrix
        self.cells = {}
        for g in range(len(keys)):
            for a in range(len(labels)):
                for b in range(a + 1, len(labels)):
                    mm = m[a][b]
                    if mm == INF:
                        continue
                    cyc = self._cell(g, a, b, int(mm))
                    if cyc is not None:
                        self.cells.setdefault(frozenset(cyc), cyc)
        find, union = _union_find(len(self.edge_gen))
        for cyc in self.cells.values():
            L = len(cyc)
            eids = [self.edge_index[(min(cyc[t], cyc[(t + 1) % L]), max(cyc[t], cyc[(t + 1) % L]))]
                    for t in range(L)]
            half = L // 2
            for t in range(half):
                union(eids[t], eids[t + half])
        self.edge_class = [find(e) for e in range(len(self.edge_gen))]

    def _cell(self, g, a, b, mm):
        cyc = [g]
        cur = self.keys[g]
        gens = (a, b)
        for t in range(2 * mm):
            cur = self.eng.mul_gen(cur, gens[t % 2])
            idx = self.index.get(cur)
            if idx is None:
                return None
            cyc.append(idx)
        if cyc[-1] != g:
            raise StructuralError("dihedral cell did not close", witness=(g, a, b))
        return cyc[:-1]

    def _step_gen(self, i, j):
        return self.pres.labels.index(self.edge_gen[self.edge_index[(min(i, j), max(i, j))]][2])

    def _inverse(self, key):
        return self.eng.normal(tuple(reversed(key)))

    def mul(self, a, b):
        return self.eng.mul(a, b)


def _reflection_key(win, e):
    i, j, _ = win.edge_gen[e]
    g = win.keys[i]
    s = win._step_gen(i, j)
    gs = win.eng.mul_gen(g, s)
    return win.eng.mul(gs, win._inverse(g))


def niblo_reeves_walls(pres: GroupPresentation, radius: int, budget=None, margin=None,
                       stabilizer_radius=None) -> WallSystem:
    """Walls of the presentation 2-complex restricted to the radius ball.

    Cells are taken in a ball ``margin`` larger (default: the largest finite
    Coxeter entry) so that opposite-edge chains can leave and re-enter the
    window. Sides use the exchange criterion: g lies beyond the wall of the
    reflection r iff ℓ(rg) < ℓ(g).
    """
    if pres.kind != COXETER:
        raise InputError("niblo_reeves_walls needs a Coxeter presentation")
    finite = [int(v) for row in pres.coxeter_matrix for v in row if v != INF]
    if margin is None:
        margin = max(finite + [2])
    outer = radius + margin
    if stabilizer_radius:
        outer = max(outer, 2 * radius + margin)
    win = _CoxeterWindow(pres, outer, budget)
    inner = np.flatnonzero(win.length <= radius)
    inner_ids = {int(v): k for k, v in enumerate(inner)}
    words = [_from_key(pres, win.keys[v]) for v in inner]
    edges = []
    edge_map = {}
    for e, (i, j, lab) in enumerate(win.edge_gen):
        if i in inner_ids and j in inner_ids:
            edge_map[e] = len(edges)
            edges.append((inner_ids[i], inner_ids[j], lab))
    ball = CubeBall([format_word(w) for w in words], edges, base=0, radius=radius,
                    payload=words, kind="coxeter")
    classes = {}
    for e, ne in edge_map.items():
        classes.setdefault(win.edge_class[e], []).append(e)
    walls = []
    seen_refl = {}
    for root in sorted(classes, key=lambda r: min(edge_map[e] for e in classes[r])):
        es = classes[root]
        refl = {_reflection_key(win, e) for e in es}
        if len(refl) != 1:
            raise StructuralError("opposite-edge class mixes reflections", witness=tuple(es))
        (r,) = refl
        plus = np.array([len(win.eng.mul(r, win.keys[v])) < win.length[v] for v in inner])
        w = Wall(len(walls), tuple(sorted(edge_map[e] for e in es)), plus, r)
        if r in seen_refl:
            w.split = True
            walls[seen_refl[r]].split = True
        else:
            seen_refl[r] = w.id
        walls.append(w)
    cells = [tuple(inner_ids[v] for v in cyc) for cyc in win.cells.values()
             if all(v in inner_ids for v in cyc)]
    ws = WallSystem(ball, walls, sorted(cells), pres,
                    {"outer_radius": outer, "margin": margin})
    ws._window = win
    ws._edge_map = edge_map
    return ws


@dataclass
class WallStabilizer:
    wall: int
    edge: tuple                 # endpoints (words) of the tested edge
    reflection: tuple           # word of the reflection
    tested: int                 # group elements whose image edge was decided
    undecided: int
    computed: frozenset         # h with h·edge in the same wall class
    predicted: frozenset        # h commuting with the reflection

    @property
    def agrees(self):
        return self.undecided == 0 and self.computed == self.predicted


def wall_stabilizers(ws: WallSystem, elements_radius=None) -> list:
    """Setwise stabilizers of the walls, compared with centralisers of reflections.

    For each wall the edge closest to the base is moved by every h with
    ℓ(h) <= elements_radius (default: the ball radius). h stabilizes the wall
    iff the image edge lies in the same opposite-edge class, read in the
    outer window. The prediction is {h : hr = rh}.
    """
    win = ws._window
    R = ws.ball.radius if elements_radius is None else elements_radius
    hs = [k for k, l in zip(win.keys, win.length) if l <= R]
    out = []
    inv_map = {v: k for k, v in ws._edge_map.items()}
    for w in ws.walls:
        e_in = min(w.edges, key=lambda e: (max(ws.ball.dist_base[ws.ball.eu[e]],
                                               ws.ball.dist_base[ws.ball.ev[e]]), e))
        e = inv_map[e_in]
        i, j, _ = win.edge_gen[e]
        root = win.edge_class[e]
        comp, pred = set(), set()
        tested = undecided = 0
        for h in hs:
            a = win.index.get(win.mul(h, win.keys[i]))
            b = win.index.get(win.mul(h, win.keys[j]))
            if win.mul(h, w.reflection) == win.mul(w.reflection, h):
                pred.add(h)
            if a is None or b is None:
                undecided += 1
                continue
            tested += 1
            f = win.edge_index[(min(a, b), max(a, b))]
            if win.edge_class[f] == root:
                comp.add(h)
        fmt = lambda k: format_word(_from_key(ws.pres, k))
        out.append(WallStabilizer(
            w.id, (fmt(win.keys[i]), fmt(win.keys[j])), _from_key(ws.pres, w.reflection),
            tested, undecided,
            frozenset(fmt(h) for h in comp), frozenset(fmt(h) for h in pred)))
    return out


# --------------------------------------------------------------------------
# generic wallspaces and Sageev duals

def wall_system_from_masks(ball: CubeBall, masks) -> WallSystem:
    walls = [Wall(k, (), np.asarray(m, dtype=bool)) for k, m in enumerate(masks)]
    return WallSystem(ball, walls)


def wall_system_from_classes(ball: CubeBall, class_ids=None) -> WallSystem:
    """Walls given by some Θ-classes of a window."""
    ids = range(len(ball.theta)) if class_ids is None else class_ids
    walls = []
    for c in ids:
        cl = ball.theta[int(c)]
        plus = cl.plus if not cl.plus[ball.base] else ~cl.plus
        walls.append(Wall(len(walls), cl.edges, plus.copy()))
    return WallSystem(ball, walls)


def sageev_dual(ws: WallSystem, budget=None, points=None) -> CubeBall:
    """Cube complex dual to the walls: consistent orientations, flips as edges.

    Walls inducing the same bipartition of the points are merged first. An
    orientation picks a side of every wall; it is consistent when every two
    chosen sides share a point. The search starts from the orientations
    realised by points and flips one wall at a time.
    """
    limit = config.state_budget(budget)
    pts = list(range(ws.ball.n)) if points is None else [int(v) for v in points]
    P = len(pts)
    masks = []
    reps = {}
    for w in ws.walls:
        m = np.asarray(w.plus, dtype=bool)[pts]
        if m.all() or not m.any():
            raise StructuralError("wall with an empty side", witness=w.id)
        key = m.tobytes() if not m[0] else (~m).tobytes()
        if key in reps:
            continue
        reps[key] = len(masks)
        masks.append(m)
    W = len(masks)
    S = np.stack(masks, axis=1) if W else np.zeros((P, 0), bool)
    Sf = S.astype(np.int32)
    Tf = 1 - Sf
    # allowed[a, b, sa, sb]: sides sa of wall a and sb of wall b meet
    allowed = np.zeros((W, W, 2, 2), dtype=bool)
    allowed[:, :, 1, 1] = (Sf.T @ Sf) > 0
    allowed[:, :, 1, 0] = (Sf.T @ Tf) > 0
    allowed[:, :, 0, 1] = (Tf.T @ Sf) > 0
    allowed[:, :, 0, 0] = (Tf.T @ Tf) > 0
    idx = np.arange(W)
    realized = {}
    for p in range(P):
        o = tuple(int(x) for x in S[p])
        realized.setdefault(o, p)
    home = pts.index(ws.ball.base) if ws.ball.base in pts else 0
    start = tuple(int(x) for x in S[home])
    index = {start: 0}
    order = [start]
    queue = deque([start])
    for o in realized:
        if o not in index:
            index[o] = len(order)
            order.append(o)
            queue.append(o)
    edges = []
    while queue:
        o = queue.popleft()
        arr = np.array(o, dtype=np.int64)
        i = index[o]
        for a in range(W):
            flipped = 1 - arr[a]
            ok = allowed[a, idx, flipped, arr]
            ok[a] = True
            if not ok.all():
                continue
            nb = o[:a] + (int(flipped),) + o[a + 1:]
            if nb not in index:
                index[nb] = len(order)
                order.append(nb)
                queue.append(nb)
                if len(order) > limit:
                    raise ResourceError("dual exceeded the state budget",
                                        partial={"vertices": len(order)})
            j = index[nb]
            if i < j:
                edges.append((i, j, f"w{a}"))
    labels = []
    for o in order:
        p = realized.get(o)
        labels.append(ws.ball.labels[pts[p]] if p is not None else "*" + "".join(map(str, o)))
    dual = CubeBall(labels, edges, base=0, payload=order, median_host=True, exact=True,
                    kind="sageev", meta={"realized": {index[o]: pts[p] for o, p in realized.items()},
                                         "walls": W})
    return dual
