"""Word engines for right-angled Coxeter/Artin groups, graph products of
finite cyclic groups, and general Coxeter groups.

Group elements are handled as words: tuples of ``(label, exponent)``
syllables. Canonical forms are the shortlex-least representative with the
generator order given by declaration order (for RAAGs ``v`` precedes
``v^-1``; for graph products ``v^k`` is ordered by ``k``).
"""

from __future__ import annotations

import heapq
import math
import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from . import config
from .errors import InputError, ResourceError

RACG = "RACG"
RAAG = "RAAG"
GRAPH_PRODUCT = "GraphProductFinite"
COXETER = "Coxeter"
KINDS = (RACG, RAAG, GRAPH_PRODUCT, COXETER)

INF = math.inf

Word = tuple  # tuple[tuple[str, int], ...]


# --------------------------------------------------------------------------
# defining graphs and presentations


@dataclass(frozen=True)
class DefiningGraph:
    """Finite simplicial graph with an ordered vertex list."""

    vertices: tuple
    edges: frozenset

    def __post_init__(self):
        verts = tuple(self.vertices)
        if len(set(verts)) != len(verts):
            raise InputError("duplicate vertex labels")
        edges = set()
        for e in self.edges:
            pair = tuple(e)
            if len(pair) != 2 or pair[0] == pair[1]:
                raise InputError(f"bad edge {e!r}: loops and hyperedges are not allowed")
            for v in pair:
                if v not in verts:
                    raise InputError(f"edge endpoint {v!r} is not a vertex")
            edges.add(frozenset(pair))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", frozenset(edges))

    @classmethod
    def from_edges(cls, vertices: Iterable[str], edges: Iterable[Sequence[str]]):
        return cls(tuple(vertices), frozenset(frozenset(e) for e in edges))

    def adjacent(self, u, v) -> bool:
        return frozenset((u, v)) in self.edges

    def neighbors(self, v) -> frozenset:
        return frozenset(w for w in self.vertices if w != v and self.adjacent(v, w))

    def link(self, v) -> frozenset:
        return self.neighbors(v)

    def star(self, v) -> frozenset:
        return self.neighbors(v) | {v}

    def is_clique(self, labels) -> bool:
        labels = list(labels)
        return all(self.adjacent(a, b) for i, a in enumerate(labels) for b in labels[i + 1:])

    def cliques(self) -> list:
        """All cliques (including the empty one), as frozensets, in size order."""
        out = [frozenset()]
        frontier = [frozenset()]
        order = {v: i for i, v in enumerate(self.vertices)}
        while frontier:
            nxt = []
            for c in frontier:
                top = max((order[v] for v in c), default=-1)
                for v in self.vertices[top + 1:]:
                    if all(self.adjacent(v, w) for w in c):
                        nxt.append(c | {v})
            out.extend(nxt)
            frontier = nxt
        return out

    def induced(self, labels) -> "DefiningGraph":
        keep = [v for v in self.vertices if v in set(labels)]
        return DefiningGraph(tuple(keep), frozenset(e for e in self.edges if e <= set(keep)))


def cycle_graph(labels: Sequence[str]) -> DefiningGraph:
    labels = tuple(labels)
    n = len(labels)
    return DefiningGraph.from_edges(labels, [(labels[i], labels[(i + 1) % n]) for i in range(n)])


def path_graph(labels: Sequence[str]) -> DefiningGraph:
    labels = tuple(labels)
    return DefiningGraph.from_edges(labels, [(labels[i], labels[i + 1]) for i in range(len(labels) - 1)])


def complete_graph(labels: Sequence[str]) -> DefiningGraph:
    labels = tuple(labels)
    return DefiningGraph.from_edges(
        labels, [(a, b) for i, a in enumerate(labels) for b in labels[i + 1:]])


@dataclass(frozen=True)
class GroupPresentation:
    """Algebraic source of every complex.

    ``labels`` is the ordered generator list. Graph kinds carry ``graph``;
    graph products carry ``orders`` (a tuple aligned with ``labels``);
    Coxeter kind carries ``coxeter_matrix`` (tuple of tuples, ``INF`` allowed).
    """

    kind: str
    labels: tuple
    graph: DefiningGraph | None = None
    orders: tuple | None = None
    coxeter_matrix: tuple | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown kind {self.kind!r}")
        if self.kind == COXETER:
            if self.graph is not None or self.orders is not None or self.coxeter_matrix is None:
                raise InputError("Coxeter presentations carry a matrix and nothing else")
            _check_coxeter_matrix(self.labels, self.coxeter_matrix)
        else:
            if self.graph is None or self.coxeter_matrix is not None:
                raise InputError(f"{self.kind} presentations need a defining graph")
            if tuple(self.labels) != self.graph.vertices:
                raise InputError("labels must match the graph's vertex order")
            if self.kind == GRAPH_PRODUCT:
                if self.orders is None or len(self.orders) != len(self.labels):
                    raise InputError("graph products need one order per vertex")
                if any(int(k) != k or k < 2 for k in self.orders):
                    raise InputError("vertex orders must be integers >= 2")
            elif self.orders is not None:
                raise InputError(f"{self.kind} presentations carry no vertex orders")

    def index(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"unknown generator label {label!r}") from None

    def vertex_orders(self) -> dict:
        if self.kind == RACG:
            return {v: 2 for v in self.labels}
        if self.kind == GRAPH_PRODUCT:
            return dict(zip(self.labels, self.orders))
        return {}

    def is_right_angled_involutive(self) -> bool:
        """True when the standard Cayley graph is a median graph of a Davis complex."""
        if self.kind == RACG:
            return True
        if self.kind == GRAPH_PRODUCT:
            return all(k == 2 for k in self.orders)
        if self.kind == COXETER:
            m = self.coxeter_matrix
            return all(m[i][j] in (2, INF) for i in range(len(m)) for j in range(len(m)) if i != j)
        return False


def _check_coxeter_matrix(labels, m):
    n = len(labels)
    if len(set(labels)) != n:
        raise InputError("duplicate generator labels")
    if len(m) != n or any(len(row) != n for row in m):
        raise InputError("Coxeter matrix shape does not match the generators")
    for i in range(n):
        if m[i][i] != 1:
            raise InputError("Coxeter matrix needs 1 on the diagonal")
        for j in range(n):
            if i != j:
                x = m[i][j]
                if x != m[j][i]:
                    raise InputError("Coxeter matrix must be symmetric")
                if not (x == INF or (int(x) == x and x >= 2)):
                    raise InputError(f"bad Coxeter entry {x!r}")


def racg(graph: DefiningGraph) -> GroupPresentation:
    return GroupPresentation(RACG, graph.vertices, graph=graph)


def raag(graph: DefiningGraph) -> GroupPresentation:
    return GroupPresentation(RAAG, graph.vertices, graph=graph)


def graph_product(graph: DefiningGraph, orders: Mapping[str, int]) -> GroupPresentation:
    return GroupPresentation(GRAPH_PRODUCT, graph.vertices, graph=graph,
                             orders=tuple(int(orders[v]) for v in graph.vertices))


def coxeter(labels: Sequence[str], matrix) -> GroupPresentation:
    mat = tuple(tuple(INF if (x is None or x == INF or x == 0 or x == "inf") else int(x) for x in row)
                for row in matrix)
    return GroupPresentation(COXETER, tuple(labels), coxeter_matrix=mat)


def coxeter_from_graph(graph: DefiningGraph) -> GroupPresentation:
    """The right-angled Coxeter group of ``graph`` written in Coxeter form."""
    v = graph.vertices
    mat = [[1 if i == j else (2 if graph.adjacent(a, b) else INF) for j, b in enumerate(v)]
           for i, a in enumerate(v)]
    return coxeter(v, mat)


def coxeter_from_diagram(labels: Sequence[str], bonds: Mapping) -> GroupPresentation:
    """Coxeter group from diagram bonds ``{(s, t): m}``; unlisted pairs commute."""
    labels = tuple(labels)
    n = len(labels)
    mat = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for (s, t), m in bonds.items():
        i, j = labels.index(s), labels.index(t)
        mat[i][j] = mat[j][i] = m
    return coxeter(labels, mat)


def finite_type(name: str) -> GroupPresentation:
    """A few finite Coxeter groups by Cartan-Killing name (A_n, B_n, D_n, I2(m), H3, H4, F4)."""
    name = name.strip()
    m = re.fullmatch(r"I2\((\d+)\)", name)
    if m:
        return coxeter_from_diagram(("s", "t"), {("s", "t"): int(m.group(1))})
    m = re.fullmatch(r"([ABDHF])(\d+)", name)
    if not m:
        raise InputError(f"unrecognised Coxeter type {name!r}")
    letter, rank = m.group(1), int(m.group(2))
    labels = tuple(f"s{i}" for i in range(1, rank + 1))
    bonds = {(labels[i], labels[i + 1]): 3 for i in range(rank - 1)}
    if letter == "A":
        pass
    elif letter == "B" and rank >= 2:
        bonds[(labels[-2], labels[-1])] = 4
    elif letter == "D" and rank >= 4:
        del bonds[(labels[-2], labels[-1])]
        bonds[(labels[-3], labels[-1])] = 3
    elif letter == "H" and rank in (3, 4):
        bonds[(labels[-2], labels[-1])] = 5
    elif letter == "F" and rank == 4:
        bonds[(labels[1], labels[2])] = 4
    else:
        raise InputError(f"unsupported Coxeter type {name!r}")
    return coxeter_from_diagram(labels, bonds)


# --------------------------------------------------------------------------
# words

_TOKEN = re.compile(r"^([^\s^]+)(?:\^(-?\d+))?$")


def parse_word(text: str | Sequence, pres: GroupPresentation | None = None) -> Word:
    """Parse ``"a b^-1 c^2"`` into syllables. ``""`` and ``"1"`` give the empty word."""
    if not isinstance(text, str):
        return tuple((str(l), int(e)) for l, e in text)
    out = []
    for tok in text.split():
        if tok == "1" and (pres is None or "1" not in pres.labels):
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise InputError(f"cannot parse token {tok!r}")
        label, exp = m.group(1), int(m.group(2) or 1)
        if exp == 0:
            continue
        if pres is not None:
            pres.index(label)
        out.append((label, exp))
    return tuple(out)


def format_word(w: Word) -> str:
    if not w:
        return "1"
    return " ".join(l if e == 1 else f"{l}^{e}" for l, e in w)


def word_length(pres: GroupPresentation, w: Word) -> int:
    """Length in the standard generating set of a canonical word."""
    if pres.kind == RAAG:
        return sum(abs(e) for _, e in w)
    return len(w)


def inverse(w: Word) -> Word:
    return tuple((l, -e) for l, e in reversed(w))


# --------------------------------------------------------------------------
# engines


class _GraphProductEngine:
    """Reduced-syllable normal form for graph products (RACG, RAAG, finite cyclic)."""

    def __init__(self, pres: GroupPresentation):
        self.pres = pres
        g = pres.graph
        n = len(pres.labels)
        self.n = n
        self.adj = [0] * n
        for i, a in enumerate(pres.labels):
            for j, b in enumerate(pres.labels):
                if i != j and g.adjacent(a, b):
                    self.adj[i] |= 1 << j
        if pres.kind == RAAG:
            self.order = [0] * n
        else:
            vo = pres.vertex_orders()
            self.order = [vo[v] for v in pres.labels]

    def _exp(self, i, e):
        k = self.order[i]
        return e % k if k else e

    def reduce(self, syllables) -> list:
        out = []
        for i, e in syllables:
            e = self._exp(i, e)
            if e == 0:
                continue
            j = len(out) - 1
            merged = False
            while j >= 0:
                vj, ej = out[j]
                if vj == i:
                    ne = self._exp(i, ej + e)
                    if ne == 0:
                        del out[j]
                    else:
                        out[j] = (i, ne)
                    merged = True
                    break
                if not (self.adj[i] >> vj) & 1:
                    break
                j -= 1
            if not merged:
                out.append((i, e))
        return out

    def _key(self, syl):
        i, e = syl
        if self.order[i]:
            return (i, e)
        return (i, 0 if e > 0 else 1)

    def canonical(self, syl: list) -> tuple:
        """Lex-least linear extension of the syllable heap."""
        n = len(syl)
        if n <= 1:
            return tuple(syl)
        indeg = [0] * n
        succ = [[] for _ in range(n)]
        for a in range(n):
            va = syl[a][0]
            for b in range(a + 1, n):
                vb = syl[b][0]
                if va == vb or not (self.adj[va] >> vb) & 1:
                    succ[a].append(b)
                    indeg[b] += 1
        heap = [(self._key(syl[a]), a) for a in range(n) if indeg[a] == 0]
        heapq.heapify(heap)
        out = []
        while heap:
            _, a = heapq.heappop(heap)
            out.append(syl[a])
            for b in succ[a]:
                indeg[b] -= 1
                if indeg[b] == 0:
                    heapq.heappush(heap, (self._key(syl[b]), b))
        return tuple(out)

    def normal(self, syllables) -> tuple:
        return self.canonical(self.reduce(syllables))

    def mul(self, a: tuple, b: tuple) -> tuple:
        return self.normal(list(a) + list(b))

    def generators(self) -> list:
        gens = []
        for i in range(self.n):
            if self.order[i]:
                gens.extend((i, k) for k in range(1, self.order[i]))
            else:
                gens.extend([(i, 1), (i, -1)])
        return gens

    def gen_length(self, key: tuple) -> int:
        if self.pres.kind == RAAG:
            return sum(abs(e) for _, e in key)
        return len(key)


class _CoxeterEngine:
    """Shortlex normal forms from the Tits representation.

    An element w is stored through the matrix of w⁻¹ on the simple roots.
    s is a left descent of w iff w⁻¹(α_s) is a negative root, so the
    shortlex normal form peels off the smallest left descent until none is
    left. With all entries in {2, 3, ∞} the matrices are integral and the
    computation is exact; otherwise the sign of a root is read from its
    largest coefficient, which is safe because roots are sign-coherent.
    """

    def __init__(self, pres: GroupPresentation, budget=None):
        self.pres = pres
        m = pres.coxeter_matrix
        self.n = n = len(pres.labels)
        self.m = m
        self.exact = all(v in (1, 2, 3, INF) for row in m for v in row)
        # σ_s(α_t) = α_t + c[s][t] α_s with c = -2B(α_s, α_t)
        c = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i == j:
                    c[i][j] = -2
                elif m[i][j] == INF:
                    c[i][j] = 2
                elif self.exact:
                    c[i][j] = {2: 0, 3: 1}[int(m[i][j])]
                else:
                    c[i][j] = 2 * math.cos(math.pi / m[i][j])
        self.c = c
        self._inv = {(): self._identity()}
        self._normal = {}
        self._mulcache = {}

    def _identity(self):
        one = 1 if self.exact else 1.0
        zero = 0 if self.exact else 0.0
        return tuple(tuple(one if i == j else zero for j in range(self.n)) for i in range(self.n))

    def _right(self, M, s):
        """M σ_s: column s is negated, column t gains c[s][t] times column s."""
        c = self.c[s]
        out = []
        for row in M:
            x = row[s]
            out.append(tuple(-x if t == s else row[t] + c[t] * x for t in range(self.n)))
        return tuple(out)

    def _negative(self, M, s) -> bool:
        col = [row[s] for row in M]
        if self.exact:
            return any(x < 0 for x in col)
        return max(col, key=abs) < 0

    def _peel(self, M) -> tuple:
        out = []
        while True:
            for s in range(self.n):
                if self._negative(M, s):
                    break
            else:
                return tuple(out)
            out.append(s)
            M = self._right(M, s)

    def normal(self, word) -> tuple:
        word = tuple(word)
        hit = self._normal.get(word)
        if hit is not None:
            return hit
        canon = self._peel(self._inverse_matrix(word))
        self._normal[word] = canon
        return canon

    def _inverse_matrix(self, word):
        hit = self._inv.get(word)
        if hit is not None:
            return hit
        M = self._identity()
        for s in word:
            M = self._left(M, s)      # (w s)⁻¹ = s w⁻¹
        self._inv[word] = M
        return M

    def _left(self, M, s):
        """σ_s M: only row s changes."""
        c = self.c[s]
        row = tuple(sum((c[t] if t != s else -1) * M[t][j] for t in range(self.n))
                    for j in range(self.n))
        return M[:s] + (row,) + M[s + 1:]

    def mul_gen(self, canon: tuple, s: int) -> tuple:
        key = (canon, s)
        hit = self._mulcache.get(key)
        if hit is not None:
            return hit
        M = self._left(self._inverse_matrix(canon), s)
        res = self._peel(M)
        self._inv.setdefault(res, M)
        self._mulcache[key] = res
        return res

    def mul(self, a: tuple, b: tuple) -> tuple:
        cur = a
        for s in b:
            cur = self.mul_gen(cur, s)
        return cur

    def generators(self) -> list:
        return list(range(self.n))


_ENGINES: dict = {}


def engine(pres: GroupPresentation, budget=None):
    key = (pres, config.state_budget(budget))
    eng = _ENGINES.get(key)
    if eng is None:
        if pres.kind == COXETER:
            eng = _CoxeterEngine(pres, budget)
        else:
            eng = _GraphProductEngine(pres)
        _ENGINES[key] = eng
    return eng


# conversion between public words and engine keys

def _to_key(pres: GroupPresentation, w: Word):
    idx = {l: i for i, l in enumerate(pres.labels)}
    try:
        if pres.kind == COXETER:
            out = []
            for l, e in w:
                out.extend([idx[l]] * abs(e))
            return tuple(out)
        return [(idx[l], e) for l, e in w]
    except KeyError as exc:
        raise InputError(f"unknown generator label {exc.args[0]!r}") from None


def _from_key(pres: GroupPresentation, key) -> Word:
    if pres.kind == COXETER:
        return tuple((pres.labels[s], 1) for s in key)
    return tuple((pres.labels[i], e) for i, e in key)


def _as_word(pres, w):
    return parse_word(w, pres) if isinstance(w, str) else tuple(w)


def normalize(pres: GroupPresentation, w, budget=None) -> Word:
    """Canonical (shortlex-least) representative of ``w``."""
    w = _as_word(pres, w)
    eng = engine(pres, budget)
    key = _to_key(pres, w)
    return _from_key(pres, eng.normal(key))


def multiply(pres: GroupPresentation, *words, budget=None) -> Word:
    out = []
    for w in words:
        out.extend(_as_word(pres, w))
    return normalize(pres, tuple(out), budget)


def equal(pres: GroupPresentation, w1, w2, budget=None) -> bool:
    return normalize(pres, w1, budget) == normalize(pres, w2, budget)


def support(pres: GroupPresentation, w) -> frozenset:
    return frozenset(l for l, _ in normalize(pres, w))


def special_coset_membership(pres: GroupPresentation, w, sub: Iterable[str]) -> bool:
    """True iff ``w`` lies in the special subgroup generated by ``sub``.

    All reduced expressions of an element share the same support, so the
    canonical form decides membership for every kind.
    """
    sub = frozenset(sub)
    for l in sub:
        pres.index(l)
    return support(pres, w) <= sub


def generator_words(pres: GroupPresentation) -> list:
    """Standard generating set as words, in canonical order."""
    eng = engine(pres)
    if pres.kind == COXETER:
        return [((l, 1),) for l in pres.labels]
    return [_from_key(pres, (g,)) for g in eng.generators()]


def enumerate_ball(pres: GroupPresentation, radius: int, budget=None):
    """Breadth-first enumeration of canonical keys up to ``radius``.

    Returns (keys in BFS order, dict key -> word length, adjacency triples
    (i, j, generator label)) with i < j and duplicates removed.
    """
    if radius < 0:
        raise InputError("radius must be non-negative")
    limit = config.state_budget(budget)
    eng = engine(pres, budget)
    ident = () if pres.kind == COXETER else ()
    keys = [ident]
    index = {ident: 0}
    length = {ident: 0}
    edges = {}
    gens = eng.generators()
    frontier = [ident]
    for r in range(radius + 1):
        nxt = []
        for k in frontier:
            for g in gens:
                if pres.kind == COXETER:
                    nk = eng.mul_gen(k, g)
                    label = pres.labels[g]
                else:
                    nk = eng.normal(list(k) + [g])
                    label = format_word(_from_key(pres, (g,)))
                if nk not in index:
                    if r == radius:
                        continue
                    index[nk] = len(keys)
                    keys.append(nk)
                    length[nk] = r + 1
                    nxt.append(nk)
                    if len(keys) > limit:
                        raise ResourceError(
                            f"ball enumeration exceeded {limit} states at radius {r + 1}",
                            partial={"reached_radius": r})
                i, j = index[k], index[nk]
                e = (min(i, j), max(i, j))
                if e not in edges:
                    edges[e] = label if i < j else _reverse_label(pres, g, label)
        frontier = nxt
    return keys, length, [(i, j, lab) for (i, j), lab in sorted(edges.items())]


def _reverse_label(pres, g, label):
    # label of the same edge read from the other endpoint
    if pres.kind in (COXETER, RACG):
        return label
    i, e = g
    inv = (i, -e)
    if pres.kind == GRAPH_PRODUCT:
        k = pres.orders[i]
        inv = (i, (-e) % k)
    return format_word(_from_key(pres, (inv,)))


def cayley_ball(pres: GroupPresentation, radius: int, budget=None):
    """Cayley-graph ball of the standard generating set around the identity."""
    from .median_core import CubeBall

    keys, _, edges = enumerate_ball(pres, radius, budget)
    words = [_from_key(pres, k) for k in keys]
    median = pres.kind == RAAG or pres.is_right_angled_involutive()
    return CubeBall(
        labels=[format_word(w) for w in words],
        edges=edges,
        base=0,
        radius=radius,
        payload=words,
        median_host=median,
        kind=f"cayley:{pres.kind}",
    )


def centralizer_in_ball(pres: GroupPresentation, g, radius: int, budget=None) -> set:
    """All ball elements commuting with ``g``."""
    g = normalize(pres, g, budget)
    keys, _, _ = enumerate_ball(pres, radius, budget)
    out = set()
    for k in keys:
        h = _from_key(pres, k)
        if multiply(pres, h, g, budget=budget) == multiply(pres, g, h, budget=budget):
            out.add(h)
    return out


# --------------------------------------------------------------------------
# JSON

def presentation_from_json(doc: Mapping) -> GroupPresentation:
    try:
        kind = doc["kind"]
    except KeyError:
        raise InputError("presentation JSON needs a 'kind'") from None
    verts = tuple(str(v) for v in doc.get("vertices", ()))
    if kind == COXETER:
        if "coxeter_matrix" not in doc:
            raise InputError("Coxeter presentation needs 'coxeter_matrix'")
        return coxeter(verts, doc["coxeter_matrix"])
    graph = DefiningGraph.from_edges(verts, [tuple(map(str, e)) for e in doc.get("edges", ())])
    if kind == RACG:
        return racg(graph)
    if kind == RAAG:
        return raag(graph)
    if kind == GRAPH_PRODUCT:
        orders = doc.get("orders") or {}
        missing = [v for v in verts if v not in orders]
        if missing:
            raise InputError(f"missing vertex orders for {missing}")
        return graph_product(graph, {v: int(orders[v]) for v in verts})
    raise InputError(f"unknown kind {kind!r}")


def presentation_to_json(pres: GroupPresentation) -> dict:
    doc = {"kind": pres.kind, "vertices": list(pres.labels)}
    if pres.graph is not None:
        order = {v: i for i, v in enumerate(pres.labels)}
        doc["edges"] = sorted(sorted(e, key=order.get) for e in pres.graph.edges)
    if pres.kind == GRAPH_PRODUCT:
        doc["orders"] = dict(zip(pres.labels, pres.orders))
    if pres.kind == COXETER:
        doc["coxeter_matrix"] = [["inf" if x == INF else int(x) for x in row] for row in pres.coxeter_matrix]
    return doc
