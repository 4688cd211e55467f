"""One-vertex square complexes, their links, and presentation rewriting.

Free-group words here are tuples of ``(label, ±1)`` letters.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field

from .. import config
from ..errors import InputError
from ..presentations import DefiningGraph, parse_word

PASS = "pass"
FAIL = "fail"
VERIFIED = "verified"
FAILED = "failed"
INCONCLUSIVE = "inconclusive"


# --------------------------------------------------------------------------
# free words

def letters(w) -> tuple:
    """Expand a word (text or syllables) into ±1 letters."""
    if isinstance(w, str):
        w = parse_word(w)
    out = []
    for label, e in w:
        s = 1 if e > 0 else -1
        out.extend([(label, s)] * abs(int(e)))
    return tuple(out)


def free_reduce(w) -> tuple:
    out = []
    for x in w:
        if out and out[-1][0] == x[0] and out[-1][1] == -x[1]:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(w) -> tuple:
    w = free_reduce(w)
    while len(w) >= 2 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = w[1:-1]
    return w


def inv(w) -> tuple:
    return tuple((l, -e) for l, e in reversed(w))


def show(w) -> str:
    if not w:
        return "1"
    parts = []
    for label, grp in itertools.groupby(w):
        k = len(list(grp)) * label[1]
        parts.append(label[0] if k == 1 else f"{label[0]}^{k}")
    return " ".join(parts)


def commutator(x, y) -> tuple:
    return ((x, 1), (y, 1), (x, -1), (y, -1))


def substitute(w, mapping) -> tuple:
    out = []
    for label, e in w:
        img = mapping.get(label)
        if img is None:
            out.append((label, e))
        else:
            out.extend(img if e > 0 else inv(img))
    return free_reduce(out)


def same_cyclic_word(u, v) -> bool:
    """u equals a cyclic permutation of v or of v⁻¹."""
    u, v = cyclic_reduce(u), cyclic_reduce(v)
    if len(u) != len(v):
        return False
    if not u:
        return True
    for cand in (v, inv(v)):
        doubled = cand + cand
        if any(doubled[i:i + len(u)] == u for i in range(len(u))):
            return True
    return False


@dataclass
class FPresentation:
    generators: list
    relators: list

    def __post_init__(self):
        self.relators = [free_reduce(letters(r) if isinstance(r, str) else r)
                         for r in self.relators]
        gs = set(self.generators)
        for r in self.relators:
            for l, _ in r:
                if l not in gs:
                    raise InputError(f"relator uses undeclared generator {l!r}")

    def display(self) -> str:
        return "⟨ " + ", ".join(self.generators) + " | " + \
            ", ".join(show(r) for r in self.relators) + " ⟩"


# --------------------------------------------------------------------------
# square complexes

@dataclass
class SquareComplexPresentation:
    """One-vertex square complex: oriented edge labels and square boundaries.

    ``cubes`` lists label tuples spanning 3-cells and higher (a k-cube on
    labels x1..xk is a torus cell, as in a Salvetti complex).
    """

    labels: list
    squares: list
    cubes: list = field(default_factory=list)

    def __post_init__(self):
        self.squares = [letters(s) if isinstance(s, str) else tuple(s) for s in self.squares]
        known = set(self.labels)
        for sq in self.squares:
            if len(sq) != 4:
                raise InputError(f"square {show(sq)} does not have 4 sides")
            for l, _ in sq:
                if l not in known:
                    raise InputError(f"square uses undeclared label {l!r}")
        for cube in self.cubes:
            if not set(cube) <= known:
                raise InputError(f"cube {cube} uses undeclared labels")


def _germ_start(letter):
    label, e = letter
    return (label, "tail" if e > 0 else "head")


def _germ_end(letter):
    label, e = letter
    return (label, "head" if e > 0 else "tail")


def link_edges(c: SquareComplexPresentation) -> list:
    """Corner edges of the vertex link as ``(germ, germ, square index, corner)``."""
    out = []
    for k, sq in enumerate(c.squares):
        for i in range(4):
            out.append((_germ_end(sq[i]), _germ_start(sq[(i + 1) % 4]), k, i))
    return out


def link_graph(c: SquareComplexPresentation) -> dict:
    """Adjacency of the link: germ -> sorted list of neighbouring germs."""
    adj = {(l, s): set() for l in c.labels for s in ("tail", "head")}
    for a, b, _, _ in link_edges(c):
        adj[a].add(b)
        adj[b].add(a)
    return {v: sorted(ws) for v, ws in adj.items()}


@dataclass
class LinkCheck:
    status: str
    reason: str = ""
    witness: tuple = ()

    @property
    def ok(self):
        return self.status == PASS


def npc_link_check(c: SquareComplexPresentation) -> LinkCheck:
    """Gromov's condition at the single vertex: the link is a flag simplicial complex.

    Without cubes this means no loops, no bigons and no triangles. Each cube
    contributes the simplices at its corners, which may fill triangles.
    """
    seen = {}
    for a, b, k, i in link_edges(c):
        if a == b:
            return LinkCheck(FAIL, "loop in link", (a, k, i))
        key = frozenset((a, b))
        if key in seen:
            return LinkCheck(FAIL, "bigon in link", (a, b, seen[key], (k, i)))
        seen[key] = (k, i)
    adj = link_graph(c)
    filled = set()
    for cube in c.cubes:
        for signs in itertools.product(("tail", "head"), repeat=len(cube)):
            filled.add(frozenset(zip(cube, signs)))
    verts = sorted(adj)
    nb = {v: set(adj[v]) for v in verts}

    def spanned(clique):
        return any(clique <= f for f in filled)

    # every clique of size >= 3 must be a face of a cube corner
    def extend(clique, cand):
        if len(clique) >= 3 and not spanned(frozenset(clique)):
            return tuple(clique)
        for i, v in enumerate(cand):
            bad = extend(clique + [v], [w for w in cand[i + 1:] if w in nb[v]])
            if bad:
                return bad
        return None

    bad = extend([], verts)
    if bad:
        return LinkCheck(FAIL, "empty simplex in link", bad)
    return LinkCheck(PASS, "link is flag")


def hexagon_complex(n: int) -> SquareComplexPresentation:
    """Five commutator squares of the hexagon plus a staircase of n+1 squares.

    The staircase squares are e_{i-1} b_i e_i⁻¹ b_i⁻¹ for i = 1..n+1 over the
    word b_1 … b_{n+1} = a1 a3 … a3, with e_0 = e_{n+1} = a6.
    """
    if n < 0:
        raise InputError("n must be non-negative")
    a = [f"a{i}" for i in range(1, 7)]
    es = [f"e{i}" for i in range(1, n + 1)]
    squares = [commutator(a[j], a[j + 1]) for j in range(5)]
    e = ["a6"] + es + ["a6"]
    b = ["a1"] + ["a3"] * n
    for i in range(1, n + 2):
        squares.append(((e[i - 1], 1), (b[i - 1], 1), (e[i], -1), (b[i - 1], -1)))
    return SquareComplexPresentation(a + es, squares)


def salvetti_complex(graph: DefiningGraph) -> SquareComplexPresentation:
    """Salvetti complex of a RAAG: a square per edge and a cube per larger clique."""
    squares = [commutator(u, v) for u, v in sorted(tuple(sorted(e, key=graph.vertices.index))
                                                  for e in graph.edges)]
    cubes = [tuple(sorted(c, key=graph.vertices.index)) for c in graph.cliques() if len(c) >= 3]
    return SquareComplexPresentation(list(graph.vertices), squares, cubes)


def pi1_presentation(c: SquareComplexPresentation) -> FPresentation:
    return FPresentation(list(c.labels), list(c.squares))


def raag_fpresentation(graph: DefiningGraph) -> FPresentation:
    order = {v: i for i, v in enumerate(graph.vertices)}
    rels = []
    for e in graph.edges:
        u, v = sorted(e, key=order.get)
        if order[v] - order[u] == len(order) - 1:
            u, v = v, u  # wrap-around edge of a cycle reads [last, first]
        rels.append(commutator(u, v))
    rels.sort(key=lambda r: (order[r[0][0]], order[r[1][0]]))
    return FPresentation(list(graph.vertices), rels)


def eliminate_generators(p: FPresentation, gens) -> FPresentation:
    """Tietze elimination: solve each generator from a relator where it occurs once."""
    gens = list(gens)
    rels = [cyclic_reduce(r) for r in p.relators]
    left = [g for g in p.generators]
    for g in gens:
        for k, r in enumerate(rels):
            pos = [i for i, (l, _) in enumerate(r) if l == g]
            if len(pos) == 1:
                break
        else:
            raise InputError(f"{g} occurs exactly once in no relator")
        i = pos[0]
        rot = r[i:] + r[:i]          # g^e · rest = 1
        rest = rot[1:]
        sol = inv(rest) if rot[0][1] > 0 else rest
        rels = [cyclic_reduce(substitute(q, {g: sol})) for j, q in enumerate(rels) if j != k]
        rels = [q for q in rels if q]
        left.remove(g)
    return FPresentation(left, rels)


def hexagon_display(n: int) -> FPresentation:
    """⟨a1..a6 | [a_j, a_j+1] (j ≤ 5), [a6, a1 a3^n]⟩."""
    a = [f"a{i}" for i in range(1, 7)]
    rels = [commutator(a[j], a[j + 1]) for j in range(5)]
    w = letters("a1 " + " ".join(["a3"] * n))
    rels.append(free_reduce((("a6", 1),) + w + (("a6", -1),) + inv(w)))
    return FPresentation(a, rels)


def hexagon_isomorphism(n: int):
    """(source, target, φ, ψ) between the hexagon RAAG and π1 of the n-th complex.

    φ(x1) = a1 a3^n and φ(xi) = ai otherwise; ψ is its inverse, sending the
    staircase edges to the conjugates they solve for.
    """
    from ..presentations import cycle_graph
    xs = [f"x{i}" for i in range(1, 7)]
    source = raag_fpresentation(cycle_graph(xs))
    target = pi1_presentation(hexagon_complex(n))
    phi = {f"x{i}": letters(f"a{i}") for i in range(1, 7)}
    phi["x1"] = letters("a1" + " a3" * n)
    psi = {f"a{i}": letters(f"x{i}") for i in range(1, 7)}
    psi["a1"] = letters("x1" + " x3^-1" * n)
    # e_i = (b1…bi)⁻¹ a6 (b1…bi) with b1 = a1, bj = a3
    for i in range(1, n + 1):
        pref = letters("a1" + " a3" * (i - 1))
        psi[f"e{i}"] = substitute(inv(pref) + (("a6", 1),) + pref, psi)
    return source, target, phi, psi


# --------------------------------------------------------------------------
# word problem search

@dataclass
class Derivation:
    word: tuple
    status: str
    steps: list = field(default_factory=list)      # (relator index, before, after)
    relators_used: frozenset = frozenset()
    expanded: int = 0


def _pieces(p: FPresentation):
    """All (u, replacement, relator index) with u·v a cyclic form of a relator, |u| >= |R|/2."""
    out = {}
    for k, r in enumerate(p.relators):
        r = cyclic_reduce(r)
        L = len(r)
        if not L:
            continue
        for cand in (r, inv(r)):
            for s in range(L):
                rot = cand[s:] + cand[:s]
                for m in range((L + 1) // 2, L + 1):
                    u, v = rot[:m], rot[m:]
                    out.setdefault(u[0], set()).add((u, inv(v), k))
    return {key: sorted(val, key=lambda t: (len(t[1]) - len(t[0]), t)) for key, val in out.items()}


def reduce_to_identity(p: FPresentation, w, budget=None, pieces=None) -> Derivation:
    """Best-first search for a rewriting of w to the empty word.

    Moves replace a subword u by v⁻¹ where u·v is a cyclic form of a relator
    and |u| ≥ |u·v|/2, then freely reduce. Shorter words are explored first.
    """
    limit = budget if budget is not None else config.state_budget(None) // 10
    pieces = pieces if pieces is not None else _pieces(p)
    start = free_reduce(w)
    if not start:
        return Derivation(start, VERIFIED)
    heap = [(len(start), 0, start)]
    parent = {start: None}
    tick = 0
    expanded = 0
    while heap:
        _, _, cur = heapq.heappop(heap)
        expanded += 1
        if expanded > limit:
            return Derivation(start, INCONCLUSIVE, expanded=expanded)
        for i, x in enumerate(cur):
            for u, rep, k in pieces.get(x, ()):
                if cur[i:i + len(u)] != u:
                    continue
                nxt = free_reduce(cur[:i] + rep + cur[i + len(u):])
                if nxt in parent:
                    continue
                parent[nxt] = (cur, k)
                if not nxt:
                    steps = []
                    node = nxt
                    while parent[node] is not None:
                        prev, kk = parent[node]
                        steps.append((kk, prev, node))
                        node = prev
                    steps.reverse()
                    used = frozenset(s[0] for s in steps)
                    return Derivation(start, VERIFIED, steps, used, expanded)
                tick += 1
                heapq.heappush(heap, (len(nxt), tick, nxt))
    return Derivation(start, INCONCLUSIVE, expanded=expanded)


# finite quotients for refutation

def _symmetric_group(k):
    return [tuple(p) for p in itertools.permutations(range(k))]


def _compose(p, q):  # p after q
    return tuple(p[i] for i in q)


def _inverse_perm(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _evaluate(w, assign, k):
    acc = tuple(range(k))
    for label, e in w:
        g = assign[label]
        acc = _compose(acc, g if e > 0 else _inverse_perm(g))
    return acc


def finite_quotient_witness(p: FPresentation, w, degrees=(2, 3, 4), budget=200_000):
    """A homomorphism to a small symmetric group killing every relator but not w."""
    gens_in_w = {l for l, _ in w}
    order = sorted(p.generators, key=lambda g: (g not in gens_in_w, p.generators.index(g)))
    pos = {g: i for i, g in enumerate(order)}
    for k in degrees:
        elems = _symmetric_group(k)
        ident = tuple(range(k))
        # check each relator as soon as its last generator is assigned
        due = [[] for _ in order]
        for r in p.relators:
            if r:
                due[max(pos[l] for l, _ in r)].append(r)
        assign = {}
        count = 0

        def search(i):
            nonlocal count
            count += 1
            if count > budget:
                return None
            if i == len(order):
                return dict(assign) if _evaluate(w, assign, k) != ident else None
            for g in elems:
                assign[order[i]] = g
                if all(_evaluate(r, assign, k) == ident for r in due[i]):
                    found = search(i + 1)
                    if found:
                        return found
            del assign[order[i]]
            return None

        found = search(0)
        if found:
            return k, found
    return None


@dataclass
class TietzeReport:
    status: str
    forward: list = field(default_factory=list)     # Derivation per source relator
    backward: list = field(default_factory=list)
    round_trip: list = field(default_factory=list)
    failed_relator: tuple | None = None
    quotient: tuple | None = None
    direction: str = ""

    @property
    def ok(self):
        return self.status == VERIFIED


def _check_direction(src, tgt, sub, budget, name):
    missing = [g for g in src.generators if g not in sub]
    if missing:
        raise InputError(f"substitution misses generators {missing}")
    pieces = _pieces(tgt)
    out = []
    for r in src.relators:
        image = substitute(r, sub)
        d = reduce_to_identity(tgt, image, budget, pieces)
        out.append(d)
        if d.status != VERIFIED:
            q = finite_quotient_witness(tgt, image)
            if q is not None:
                return out, TietzeReport(FAILED, failed_relator=r, quotient=q, direction=name)
            return out, TietzeReport(INCONCLUSIVE, failed_relator=r, direction=name)
    return out, None


def tietze_verify(source: FPresentation, target: FPresentation, substitution: dict,
                  inverse_substitution: dict | None = None, budget=None) -> TietzeReport:
    """Check that a substitution defines a homomorphism, and an isomorphism when
    an inverse substitution is given.

    Every substituted source relator must rewrite to the empty word in the
    target. ``failed`` is only reported with a finite quotient of the target
    in which the image relator survives; otherwise an unfinished search is
    ``inconclusive``.
    """
    sub = {k: letters(v) if isinstance(v, str) else tuple(v) for k, v in substitution.items()}
    fwd, bad = _check_direction(source, target, sub, budget, "forward")
    if bad:
        bad.forward = fwd
        return bad
    report = TietzeReport(VERIFIED, forward=fwd)
    if inverse_substitution is None:
        return report
    isub = {k: letters(v) if isinstance(v, str) else tuple(v)
            for k, v in inverse_substitution.items()}
    bwd, bad = _check_direction(target, source, isub, budget, "backward")
    if bad:
        bad.forward, bad.backward = fwd, bwd
        return bad
    report.backward = bwd
    # ψ∘φ and φ∘ψ fix generators
    trips = []
    for g in source.generators:
        w = substitute(substitute(((g, 1),), sub), isub) + ((g, -1),)
        trips.append(reduce_to_identity(source, w, budget))
    for g in target.generators:
        w = substitute(substitute(((g, 1),), isub), sub) + ((g, -1),)
        trips.append(reduce_to_identity(target, w, budget))
    report.round_trip = trips
    for d in trips:
        if d.status != VERIFIED:
            report.status = INCONCLUSIVE
            report.direction = "round trip"
            break
    return report
