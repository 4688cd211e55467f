"""Discrete classification procedures.

Virtual bases of ℤⁿ and the projective action on them, cubical structures
on products of infinite dihedral groups, loose squares, κ(v) and twists in
defining graphs, and involutions of finite Coxeter groups.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx
import numpy as np

from . import config
from .errors import Inconclusive, InputError, ResourceError, StructuralError
from .presentations import COXETER, INF, DefiningGraph, GroupPresentation, engine

# --------------------------------------------------------------------------
# virtual bases


@dataclass(frozen=True)
class VirtualBasis:
    n: int
    vectors: tuple

    def to_json(self):
        return {"n": self.n, "vectors": [list(v) for v in self.vectors]}


def _rational_matrix(A) -> list:
    try:
        rows = [[Fraction(x) for x in row] for row in A]
    except (TypeError, ValueError) as exc:
        raise InputError(f"not a rational matrix: {exc}") from None
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise InputError("matrix must be square and non-empty")
    return rows


def _inverse_and_det(rows):
    """Gauss-Jordan over ℚ; returns (inverse, determinant)."""
    n = len(rows)
    aug = [r[:] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise InputError("matrix is singular")
        if piv != col:
            aug[col], aug[piv] = aug[piv], aug[col]
            det = -det
        p = aug[col][col]
        det *= p
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [r[n:] for r in aug], det


def primitive(v) -> tuple:
    """Primitive integer vector on the line through v, first nonzero entry positive."""
    v = [Fraction(x) for x in v]
    if all(x == 0 for x in v):
        raise InputError("zero vector has no primitive form")
    den = math.lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints)
    ints = [x // g for x in ints]
    if next(x for x in ints if x != 0) < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def _basis(vectors) -> VirtualBasis:
    vs = sorted(primitive(v) for v in vectors)
    return VirtualBasis(len(vs), tuple(vs))


def virtual_basis_of_matrix(A) -> VirtualBasis:
    """Lines ⟨v⟩ with Av axis-parallel: the columns of adj(A), made primitive."""
    rows = _rational_matrix(A)
    if any(x.denominator != 1 for r in rows for x in r):
        raise InputError("virtual_basis_of_matrix expects an integer matrix")
    inv, det = _inverse_and_det(rows)
    n = len(rows)
    adj = [[det * inv[i][j] for j in range(n)] for i in range(n)]
    return _basis([[adj[i][j] for i in range(n)] for j in range(n)])


def standard_basis(n: int) -> VirtualBasis:
    return _basis([[int(i == j) for i in range(n)] for j in range(n)])


def pgl_act(A, vb: VirtualBasis) -> VirtualBasis:
    rows = _rational_matrix(A)
    if len(rows) != vb.n:
        raise InputError("matrix size does not match the basis")
    _inverse_and_det(rows)          # raises on singular input
    return _basis([[sum(r[j] * v[j] for j in range(vb.n)) for r in rows] for v in vb.vectors])


# --------------------------------------------------------------------------
# products of infinite dihedral groups


@dataclass
class DinfStructure:
    n: int
    pairs: list                # [(i, j)] reflections sharing a 2×2 block
    singletons: list
    blocks: list               # coordinate blocks, aligned with the owners below
    owners: list

    @property
    def k(self) -> int:
        return len(self.pairs)

    def to_json(self):
        return {"n": self.n, "k": self.k, "pairs": [list(p) for p in self.pairs],
                "singletons": self.singletons, "blocks": [list(b) for b in self.blocks],
                "owners": [list(o) for o in self.owners]}


def _signed_permutation(M) -> np.ndarray:
    A = np.array(M, dtype=np.int64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InputError("images must be square matrices")
    if not (np.isin(A, (-1, 0, 1)).all() and (np.abs(A).sum(0) == 1).all()
            and (np.abs(A).sum(1) == 1).all()):
        raise InputError("image is not a signed permutation matrix")
    return A


def dinf_classify(images) -> DinfStructure:
    """Split the images into a common block decomposition.

    Coordinates are grouped into orbits of the permutation parts; every
    orbit has size one or two, and the reflections acting non-trivially on
    an orbit own it. A two-coordinate block owned by two reflections is a
    rotated pair.
    """
    mats = [_signed_permutation(M) for M in images]
    if not mats:
        raise InputError("no images given")
    n = mats[0].shape[0]
    if len(mats) != n or any(M.shape != (n, n) for M in mats):
        raise InputError("need n images of size n × n")
    eye = np.eye(n, dtype=np.int64)
    for i, M in enumerate(mats):
        if not (M @ M == eye).all():
            raise InputError(f"image {i} does not have order ≤ 2")
    for i, j in itertools.combinations(range(n), 2):
        if not (mats[i] @ mats[j] == mats[j] @ mats[i]).all():
            raise InputError(f"images {i} and {j} do not commute")
    # rank: the 2^n products must be distinct
    seen = {eye.tobytes()}
    for M in mats:
        seen |= {(np.frombuffer(s, dtype=np.int64).reshape(n, n) @ M).tobytes() for s in seen}
    if len(seen) != 2 ** n:
        raise InputError("images do not generate an elementary abelian group of rank n")
    g = nx.Graph()
    g.add_nodes_from(range(n))
    for M in mats:
        for r in range(n):
            g.add_edge(r, int(np.flatnonzero(M[r])[0]))
    blocks = sorted(sorted(c) for c in nx.connected_components(g))
    owners, pairs, singles = [], [], []
    for b in blocks:
        if len(b) > 2:
            raise StructuralError("orbit of size > 2: not block-diagonalisable", witness=b)
        own = [i for i, M in enumerate(mats) if not (M[np.ix_(b, b)] == eye[np.ix_(b, b)]).all()]
        owners.append(own)
        if len(own) != len(b):
            raise StructuralError("block is not owned by exactly its rank of reflections",
                                  witness={"block": b, "owners": own})
        (pairs if len(b) == 2 else singles).append(tuple(own) if len(b) == 2 else own[0])
    flat = sorted(itertools.chain(singles, *pairs))
    if flat != list(range(n)):
        raise StructuralError("a reflection owns more than one block", witness=owners)
    return DinfStructure(n, sorted(pairs), sorted(singles), blocks, owners)


# --------------------------------------------------------------------------
# defining graphs as bitmasks


def _masks(graph: DefiningGraph):
    idx = {v: i for i, v in enumerate(graph.vertices)}
    adj = [0] * len(idx)
    for e in graph.edges:
        a, b = (idx[x] for x in e)
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return idx, adj


def _bits(m):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def _is_clique(adj, S):
    return all((S & ~adj[u] & ~(1 << u)) == 0 for u in _bits(S))


def _nonadj_counts(adj, S):
    return [bin(S & ~adj[u] & ~(1 << u)).count("1") for u in _bits(S)]


def _virtually_abelian(adj, S):
    """W_S ≅ D∞ᵃ × (ℤ/2)ᵇ: the opposite graph on S is a matching plus isolated vertices."""
    return all(c <= 1 for c in _nonadj_counts(adj, S))


def _hyperoctahedron(adj, S):
    return all(c == 1 for c in _nonadj_counts(adj, S))


def _is_square(adj, S):
    return bin(S).count("1") == 4 and all(bin(adj[u] & S).count("1") == 2 for u in _bits(S))


def _maximal(sets):
    sets = sorted(set(sets), key=lambda s: -bin(s).count("1"))
    out = []
    for s in sets:
        if not any(s & t == s for t in out):
            out.append(s)
    return out


class _GraphData:
    """Per-graph tables shared by all squares of the graph."""

    def __init__(self, n, adj):
        self.n, self.adj = n, adj
        full = range(1 << n)
        va = [S for S in full if _virtually_abelian(adj, S)]
        self.max_va = _maximal(va)
        self.max_ho = _maximal(S for S in va if _hyperoctahedron(adj, S))
        self.squares = [S for S in full if bin(S).count("1") == 4 and _is_square(adj, S)]

    def conditions(self, D):
        adj = self.adj
        c1 = all((D & L) == D or _is_clique(adj, D & L) for L in self.max_va)
        c2 = all((D & L) == D or _is_clique(adj, D & L) for L in self.max_ho)
        c3 = all(_virtually_abelian(adj, D | E) or _is_clique(adj, D & E) for E in self.squares)
        c4 = not any(bin(D & E).count("1") == 3 for E in self.squares)
        return (c1, c2, c3, c4)


@dataclass
class SquareClassification:
    square: tuple
    verdicts: tuple
    label: str

    def to_json(self):
        return {"square": list(self.square), "verdicts": list(self.verdicts), "label": self.label}


def _classified(square, verdicts):
    if len(set(verdicts)) != 1:
        raise StructuralError("loose-square conditions disagree",
                              witness={"square": square, "verdicts": verdicts})
    return SquareClassification(tuple(square), tuple(verdicts), "loose" if verdicts[0] else "bonded")


def loose_square(graph: DefiningGraph, square, data=None) -> SquareClassification:
    """Evaluate the four loose-square conditions independently."""
    idx, adj = _masks(graph)
    try:
        D = sum(1 << idx[v] for v in set(square))
    except KeyError as exc:
        raise InputError(f"unknown vertex {exc}") from None
    if not _is_square(adj, D):
        raise InputError(f"{list(square)} is not an induced square")
    data = data or _GraphData(len(idx), adj)
    return _classified(square, data.conditions(D))


def squares(graph: DefiningGraph) -> list:
    idx, adj = _masks(graph)
    vs = graph.vertices
    return [tuple(vs[i] for i in _bits(S)) for S in _GraphData(len(idx), adj).squares]


def classify_squares(graph: DefiningGraph) -> list:
    idx, adj = _masks(graph)
    data = _GraphData(len(idx), adj)
    vs = graph.vertices
    return [_classified(tuple(vs[i] for i in _bits(S)), data.conditions(S)) for S in data.squares]


def maximal_hyperoctahedra(graph: DefiningGraph) -> list:
    idx, adj = _masks(graph)
    vs = graph.vertices
    return [frozenset(vs[i] for i in _bits(S)) for S in _GraphData(len(idx), adj).max_ho]


def square_sweep(n: int, graphs=None):
    """Classify every square of every labelled graph on n vertices.

    Returns (graphs checked, squares checked, disagreements) where each
    disagreement is (edge mask, square mask, verdicts).
    """
    pairs = list(itertools.combinations(range(n), 2))
    source = range(1 << len(pairs)) if graphs is None else graphs
    n_graphs = n_squares = 0
    bad = []
    for code in source:
        adj = [0] * n
        for b, (u, v) in enumerate(pairs):
            if code >> b & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        data = _GraphData(n, adj)
        n_graphs += 1
        for D in data.squares:
            n_squares += 1
            v = data.conditions(D)
            if len(set(v)) != 1:
                bad.append((code, D, v))
    return n_graphs, n_squares, bad


def graph_from_nx(g: nx.Graph) -> DefiningGraph:
    verts = tuple(str(v) for v in g.nodes)
    return DefiningGraph.from_edges(verts, [(str(a), str(b)) for a, b in g.edges])


def graph_from_graph6(text: str) -> DefiningGraph:
    try:
        g = nx.from_graph6_bytes(text.strip().encode())
    except Exception as exc:
        raise InputError(f"bad graph6 string: {exc}") from None
    return graph_from_nx(g)


# --------------------------------------------------------------------------
# κ and twists


def kappa(graph: DefiningGraph, v) -> frozenset:
    if v not in graph.vertices:
        raise InputError(f"unknown vertex {v!r}")
    g = nx.Graph()
    g.add_nodes_from(graph.vertices)
    g.add_edges_from(tuple(e) for e in graph.edges)
    through = [frozenset(c) for c in nx.find_cliques(g) if v in c]
    by_cliques = frozenset.intersection(*through)
    sv = graph.star(v)
    by_stars = frozenset(w for w in graph.vertices if sv <= graph.star(w))
    if by_cliques != by_stars:
        raise StructuralError("κ formulas disagree", witness=(sorted(by_cliques), sorted(by_stars)))
    return by_cliques


def twist_pairs(graph: DefiningGraph) -> list:
    st = {v: graph.star(v) for v in graph.vertices}
    return [(v, w) for v in graph.vertices for w in graph.vertices if v != w and st[v] <= st[w]]


def is_twistless(graph: DefiningGraph) -> bool:
    return not twist_pairs(graph)


# --------------------------------------------------------------------------
# involutions of finite Coxeter groups

def _degrees(m, comp):
    return {a: sum(1 for c in comp if c != a and m[a][c] != 2) for a in comp}


def _diagram_type(m, comp):
    """(type name, centre nontrivial) for a connected diagram of rank ≤ 4.

    Returns (None, False) for infinite groups and ("", None) above rank 4,
    where the caller decides by enumeration.
    """
    r = len(comp)
    pairs = [(a, b) for a, b in itertools.combinations(comp, 2) if m[a][b] != 2]
    bonds = sorted(m[a][b] for a, b in pairs)
    if r == 1:
        return "A1", True
    if any(x == INF for x in bonds):
        return None, False
    if r == 2:
        b = bonds[0]
        return {3: "A2", 4: "B2", 6: "G2"}.get(b, f"I2({b})"), b % 2 == 0
    if r > 4:
        return "", None
    if len(pairs) != r - 1:
        return None, False              # a cycle in the diagram
    deg = _degrees(m, comp)
    heavy = [(a, b) for a, b in pairs if m[a][b] > 3]
    if len(heavy) > 1:
        return None, False
    if r == 3:
        return {(3, 3): ("A3", False), (3, 4): ("B3", True), (3, 5): ("H3", True)}.get(
            tuple(bonds), (None, False))
    if sorted(deg.values()) == [1, 1, 1, 3]:
        return ("D4", True) if not heavy else (None, False)
    if not heavy:
        return "A4", False
    a, b = heavy[0]
    at_end = min(deg[a], deg[b]) == 1
    if m[a][b] == 4:
        return ("B4", True) if at_end else ("F4", True)
    if m[a][b] == 5 and at_end:
        return "H4", True
    return None, False


def _components(m, T):
    T = list(T)
    g = nx.Graph()
    g.add_nodes_from(T)
    g.add_edges_from((a, b) for a, b in itertools.combinations(T, 2) if m[a][b] != 2)
    return [sorted(c) for c in nx.connected_components(g)]


@dataclass
class InvolutionRecord:
    involution: tuple          # canonical key (generator indices)
    subset: tuple              # special subgroup T, as generator labels
    types: tuple               # type names of the components of T
    conjugator: tuple
    verified: bool


@dataclass
class RichardsonReport:
    group: str
    order: int
    involutions: list = field(default_factory=list)
    admissible_subsets: list = field(default_factory=list)

    @property
    def all_verified(self) -> bool:
        return all(r.verified for r in self.involutions)

    def to_json(self, labels):
        def word(key):
            return " ".join(labels[i] for i in key) or "1"
        return {"group": self.group, "order": self.order, "all_verified": self.all_verified,
                "admissible_subsets": [list(s) for s in self.admissible_subsets],
                "involutions": [{"involution": word(r.involution), "P": list(r.subset),
                                 "types": list(r.types), "conjugator": word(r.conjugator),
                                 "verified": r.verified} for r in self.involutions]}


def _enumerate_group(eng, gens, limit, within=None):
    start = ()
    seen = {start}
    queue = deque([start])
    while queue:
        g = queue.popleft()
        for s in gens if within is None else within:
            h = eng.mul_gen(g, s)
            if h not in seen:
                seen.add(h)
                if len(seen) > limit:
                    raise ResourceError("group enumeration exceeded the budget",
                                        partial={"elements": len(seen)})
                queue.append(h)
    return seen


def _centre_by_enumeration(eng, gens, comp, limit):
    try:
        sub = _enumerate_group(eng, gens, limit, within=comp)
    except ResourceError:
        return None, False
    longest = max(sub, key=lambda k: (len(k), k))
    central = all(eng.mul_gen(longest, s) == eng.mul((s,), longest) for s in comp)
    return f"rank{len(comp)}", central


def richardson_check(pres: GroupPresentation, budget=None, name=None) -> RichardsonReport:
    """Certify each involution as the longest element of a conjugate of a special subgroup."""
    if pres.kind != COXETER:
        raise InputError("richardson_check needs a Coxeter presentation")
    m = pres.coxeter_matrix
    gens = list(range(len(pres.labels)))
    limit = config.state_budget(budget)
    eng = engine(pres)
    try:
        elements = _enumerate_group(eng, gens, limit)
    except ResourceError as exc:
        raise Inconclusive("group is not finite within budget", best=exc.partial) from None
    inv = {}
    for g in elements:
        # inverse of a reduced word is its reversal
        inv[g] = eng.normal(tuple(reversed(g)))
    admissible = []
    for r in range(1, len(gens) + 1):
        for T in itertools.combinations(gens, r):
            types = []
            ok = True
            for comp in _components(m, T):
                t, centre = _diagram_type(m, comp)
                if centre is None:
                    t, centre = _centre_by_enumeration(eng, gens, comp, limit)
                if t is None or not centre:
                    ok = False
                    break
                types.append(t)
            if ok:
                sub = _enumerate_group(eng, gens, limit, within=T)
                longest = max(sub, key=lambda k: (len(k), k))
                admissible.append((T, tuple(types), longest))
    # conjugates, shortest conjugator first
    found = {}
    for g in sorted(elements, key=lambda k: (len(k), k)):
        for T, types, w in admissible:
            c = eng.mul(eng.mul(g, w), inv[g])
            if c not in found:
                found[c] = (T, types, g, w)
    report = RichardsonReport(name or "coxeter", len(elements),
                              admissible_subsets=[tuple(pres.labels[i] for i in T) for T, _, _ in admissible])
    for x in sorted(elements, key=lambda k: (len(k), k)):
        if x == () or eng.mul(x, x) != ():
            continue
        if x not in found:
            report.involutions.append(InvolutionRecord(x, (), (), (), False))
            continue
        T, types, g, w = found[x]
        # independent check: w is central in W_T and x = g w g⁻¹
        central = all(eng.mul_gen(w, s) == eng.mul((s,), w) for s in T)
        ok = central and eng.mul(eng.mul(g, w), inv[g]) == x
        report.involutions.append(InvolutionRecord(
            x, tuple(pres.labels[i] for i in T), types, g, ok))
    return report
