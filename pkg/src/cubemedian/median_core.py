"""Median-graph engine on finite windows of cube complexes.

A :class:`CubeBall` is a finite connected window of a 1-skeleton with a base
vertex and a radius. Hyperplanes of the window are computed as Θ-classes
(Djoković–Winkler relation, transitively closed). Queries that could see
past the edge of the window are labelled ``truncated`` instead of being
trusted.

Vertices are referred to by integer ids throughout.
"""

from __future__ import annotations

import itertools
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import InputError, StructuralError

CERTIFIED = "certified"
TRUNCATED = "truncated"

CONVEX = "convex"
SUBALGEBRA_NOT_CONVEX = "subalgebra_not_convex"
NOT_SUBALGEBRA = "not_subalgebra"

TRANSVERSE = "transverse"
NESTED = "nested"
DISJOINT_UNNESTED = "disjoint_unnested"


@dataclass(frozen=True)
class Certification:
    status: str
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.status == CERTIFIED

    def __and__(self, other: "Certification") -> "Certification":
        if self.ok and other.ok:
            return self
        bad = self if not self.ok else other
        return bad


@dataclass(eq=False)
class ThetaClass:
    """One hyperplane of a window: its edges and the two halfspaces.

    ``plus`` is a boolean vertex mask; the plus side contains the second
    endpoint of the first edge of the class.
    """

    id: int
    edges: tuple
    plus: np.ndarray = field(repr=False)
    boundary_flag: bool = False

    @property
    def side_plus(self) -> frozenset:
        return frozenset(np.flatnonzero(self.plus).tolist())

    @property
    def side_minus(self) -> frozenset:
        return frozenset(np.flatnonzero(~self.plus).tolist())

    def side(self, sign: int) -> np.ndarray:
        return self.plus if sign > 0 else ~self.plus


class CubeBall:
    """Finite connected window of a cube-complex 1-skeleton.

    Parameters
    ----------
    labels:
        display label per vertex (ids are positions in this list).
    edges:
        iterable of ``(i, j, label)``.
    base, radius:
        base vertex and window radius; ``radius`` defaults to the eccentricity
        of ``base`` and may not be smaller than it.
    squares:
        optional 4-cycles declared as 2-cells; each must be induced.
    payload:
        optional per-vertex objects (words, coordinates, cosets) for lookup.
    median_host:
        the window is an isometric subgraph of a median graph (balls in
        Davis/Salvetti/graph-product complexes, boxes in tilings). Enables
        the one-representative Θ computation and sign-vector medians.
    exact:
        the window is a convex subcomplex of its host (or the host itself),
        so every query is certified.
    """

    def __init__(self, labels, edges, base=0, radius=None, squares=(), payload=None,
                 median_host=False, exact=False, kind="", meta=None):
        self.labels = [str(l) for l in labels]
        n = len(self.labels)
        if n == 0:
            raise InputError("empty ball")
        self.n = n
        seen = {}
        for e in edges:
            i, j = int(e[0]), int(e[1])
            lab = str(e[2]) if len(e) > 2 else ""
            if i == j or not (0 <= i < n and 0 <= j < n):
                raise InputError(f"bad edge {e!r}")
            key = (min(i, j), max(i, j))
            if key not in seen:
                seen[key] = (i, j, lab)
        ordered = [seen[k] for k in sorted(seen)]
        self.eu = np.array([e[0] for e in ordered], dtype=np.int64)
        self.ev = np.array([e[1] for e in ordered], dtype=np.int64)
        self.edge_labels = [e[2] for e in ordered]
        self.m = len(ordered)
        self._edge_index = {(min(a, b), max(a, b)): k for k, (a, b, _) in enumerate(ordered)}
        self.adj = [[] for _ in range(n)]
        for k, (a, b, _) in enumerate(ordered):
            self.adj[a].append((b, k))
            self.adj[b].append((a, k))
        data = np.ones(2 * self.m, dtype=np.int8)
        rows = np.concatenate([self.eu, self.ev])
        cols = np.concatenate([self.ev, self.eu])
        self.csr = csr_matrix((data, (rows, cols)), shape=(n, n))
        self.base = int(base)
        if not 0 <= self.base < n:
            raise InputError("base vertex out of range")
        self._rows = OrderedDict()
        self._row_cap = max(64, (1 << 24) // max(n, 1))
        db = self.distances(self.base)
        if (db < 0).any():
            raise InputError("ball is not connected")
        self.dist_base = db
        ecc = int(db.max())
        if radius is None:
            radius = ecc
        if radius < ecc:
            raise InputError(f"radius {radius} is smaller than the base eccentricity {ecc}")
        self.radius = int(radius)
        self.boundary_shell = frozenset(np.flatnonzero(db == self.radius).tolist())
        self.payload = list(payload) if payload is not None else None
        self._payload_index = None
        self.median_host = bool(median_host)
        self.exact = bool(exact)
        self.kind = kind
        self.meta = dict(meta or {})
        self.squares = [tuple(int(x) for x in sq) for sq in squares]
        for sq in self.squares:
            self._check_square(sq)
        self._label_index = None
        self._theta = None
        self._edge_class = None
        self._sides = None
        self._crossing = None
        self._dimension = None
        self._fp = None

    # -- basic graph access ---------------------------------------------

    def __len__(self):
        return self.n

    def has_edge(self, i, j) -> bool:
        return (min(i, j), max(i, j)) in self._edge_index

    def edge_id(self, i, j) -> int:
        return self._edge_index[(min(i, j), max(i, j))]

    def neighbors(self, v):
        return [w for w, _ in self.adj[v]]

    def edges(self):
        return [(int(a), int(b), l) for a, b, l in zip(self.eu, self.ev, self.edge_labels)]

    def _check_square(self, sq):
        if len(sq) != 4 or len(set(sq)) != 4:
            raise InputError(f"square {sq} needs four distinct vertices")
        for t in range(4):
            if not self.has_edge(sq[t], sq[(t + 1) % 4]):
                raise InputError(f"square {sq} is not a 4-cycle")
        if self.has_edge(sq[0], sq[2]) or self.has_edge(sq[1], sq[3]):
            raise InputError(f"square {sq} is not induced")

    def vid(self, key) -> int:
        """Vertex id from an id, a label, or a payload item."""
        if isinstance(key, (int, np.integer)):
            return int(key)
        if self.payload is not None:
            if self._payload_index is None:
                self._payload_index = {p: i for i, p in enumerate(self.payload)}
            if key in self._payload_index:
                return self._payload_index[key]
        if self._label_index is None:
            self._label_index = {l: i for i, l in enumerate(self.labels)}
        try:
            return self._label_index[key]
        except (KeyError, TypeError):
            raise InputError(f"vertex {key!r} is not in the ball") from None

    def contains(self, key) -> bool:
        try:
            self.vid(key)
            return True
        except InputError:
            return False

    # -- distances --------------------------------------------------------

    def distances(self, v) -> np.ndarray:
        v = int(v)
        row = self._rows.get(v)
        if row is not None:
            self._rows.move_to_end(v)
            return row
        return self._fill_rows([v])[v]

    def _fill_rows(self, vs):
        got = {}
        missing = []
        for v in vs:
            row = self._rows.get(v)
            if row is None:
                missing.append(v)
            else:
                self._rows.move_to_end(v)
                got[v] = row
        for start in range(0, len(missing), 256):
            chunk = missing[start:start + 256]
            d = shortest_path(self.csr, method="D", unweighted=True, indices=chunk)
            d = np.where(np.isinf(d), -1, d).astype(np.int32)
            for v, row in zip(chunk, d):
                row.setflags(write=False)
                self._rows[v] = row
                got[v] = row
        while len(self._rows) > self._row_cap:
            self._rows.popitem(last=False)
        return got

    def distance_rows(self, vs) -> np.ndarray:
        vs = [int(v) for v in vs]
        if not vs:
            return np.zeros((0, self.n), np.int32)
        got = self._fill_rows(vs)
        return np.stack([got[v] for v in vs])

    def d(self, u, v) -> int:
        return int(self.distances(u)[int(v)])

    def distance_to_set(self, mask) -> np.ndarray:
        """Multi-source BFS distance to the vertices in a boolean mask."""
        mask = np.asarray(mask, dtype=bool)
        dist = np.full(self.n, -1, dtype=np.int32)
        cur = mask.copy()
        step = 0
        while cur.any():
            dist[cur] = step
            reach = (self.csr @ cur.astype(np.int8)) > 0
            cur = reach & (dist < 0)
            step += 1
        return dist

    def mask(self, vertices) -> np.ndarray:
        m = np.zeros(self.n, dtype=bool)
        idx = [int(v) for v in vertices]
        if idx:
            m[idx] = True
        return m

    # -- Θ-classes ----------------------------------------------------------

    @property
    def theta(self) -> list:
        if self._theta is None:
            self._compute_theta()
        return self._theta

    @property
    def edge_class(self) -> np.ndarray:
        if self._theta is None:
            self._compute_theta()
        return self._edge_class

    @property
    def sides(self) -> np.ndarray:
        """Boolean (vertex, class) matrix: True where the vertex is on the plus side."""
        if self._theta is None:
            self._compute_theta()
        return self._sides

    def install_theta(self, cls, plus_list):
        """Use a known hyperplane structure instead of computing it."""
        self._compute_theta((np.asarray(cls, dtype=np.int64), [np.array(p, bool) for p in plus_list]))

    def _compute_theta(self, known=None):
        if known is not None:
            cls, plus_list = known
        elif self.median_host:
            cls, plus_list = self._theta_median()
        else:
            cls, plus_list = self._theta_closure()
        shell = self.mask(self.boundary_shell)
        classes = []
        for c, plus in enumerate(plus_list):
            eids = np.flatnonzero(cls == c)
            touches = bool(shell[self.eu[eids]].any() or shell[self.ev[eids]].any())
            plus.setflags(write=False)
            classes.append(ThetaClass(c, tuple(eids.tolist()), plus, touches))
        self._theta = classes
        self._edge_class = cls
        self._sides = (np.stack([c.plus for c in classes], axis=1)
                       if classes else np.zeros((self.n, 0), dtype=bool))

    def _theta_median(self):
        # In an isometric subgraph of a median graph Θ is already transitive,
        # so one pair of BFS rows per class suffices.
        cls = np.full(self.m, -1, dtype=np.int64)
        plus_list = []
        for e in range(self.m):
            if cls[e] >= 0:
                continue
            a, b = int(self.eu[e]), int(self.ev[e])
            da, db = self.distances(a), self.distances(b)
            if (np.abs(da - db) != 1).any():
                raise StructuralError("host declared median but graph is not bipartite",
                                      witness=(a, b))
            plus = db < da
            members = plus[self.eu] != plus[self.ev]
            if (cls[members] >= 0).any():
                raise StructuralError("Θ is not transitive: host declared median is not",
                                      witness=(a, b))
            cls[members] = len(plus_list)
            plus_list.append(plus.copy())
        return cls, plus_list

    def _theta_closure(self):
        # Generic window: close the Djoković relation under transitivity.
        parent = list(range(self.m))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        eu, ev = self.eu, self.ev
        for e in range(self.m):
            a, b = int(eu[e]), int(ev[e])
            da, db = self.distances(a), self.distances(b)
            related = (da[eu] + db[ev]) != (da[ev] + db[eu])
            re = find(e)
            for f in np.flatnonzero(related):
                rf = find(int(f))
                if rf != re:
                    parent[rf] = re
        roots = {}
        cls = np.empty(self.m, dtype=np.int64)
        for e in range(self.m):
            r = find(e)
            if r not in roots:
                roots[r] = len(roots)
            cls[e] = roots[r]
        plus_list = []
        for c in range(len(roots)):
            e = int(np.flatnonzero(cls == c)[0])
            da, db = self.distances(int(eu[e])), self.distances(int(ev[e]))
            plus_list.append(db < da)
        return cls, plus_list

    @property
    def crossing(self) -> np.ndarray:
        """Boolean class-by-class transversality matrix (all four quadrants met)."""
        if self._crossing is None:
            s = self.sides.astype(np.float32)
            t = 1.0 - s
            pp = s.T @ s
            pm = s.T @ t
            mp = t.T @ s
            mm = t.T @ t
            cr = (pp > 0) & (pm > 0) & (mp > 0) & (mm > 0)
            np.fill_diagonal(cr, False)
            self._crossing = cr
        return self._crossing

    def halfspace_mask(self, hs) -> np.ndarray:
        """Vertex mask of a halfspace ``(class_id, sign)``."""
        c, sign = hs
        return self.theta[int(c)].side(int(sign))

    def halfspaces_containing(self, v) -> list:
        s = self.sides[int(v)]
        return [(c, 1 if s[c] else -1) for c in range(len(s))]

    # -- sign-vector medians (median hosts) ---------------------------------

    def _fingerprints(self):
        if self._fp is None:
            packed = np.packbits(self.sides, axis=1)
            pad = (-packed.shape[1]) % 8
            if pad:
                packed = np.concatenate([packed, np.zeros((self.n, pad), np.uint8)], axis=1)
            words = np.ascontiguousarray(packed).view(np.uint64)
            rng = np.random.default_rng(0x5EED)
            mult = rng.integers(1, 2**63, size=words.shape[1], dtype=np.uint64) | np.uint64(1)
            with np.errstate(over="ignore"):
                fp = (words * mult).sum(axis=1, dtype=np.uint64)
            order = np.argsort(fp, kind="stable")
            self._fp = (words, mult, fp, order, fp[order])
        return self._fp

    def lookup_sign_words(self, words: np.ndarray) -> np.ndarray:
        """Vertex ids with the given packed sign vectors, -1 where none exists."""
        allw, mult, _, order, sfp = self._fingerprints()
        with np.errstate(over="ignore"):
            fp = (words * mult).sum(axis=1, dtype=np.uint64)
        pos = np.searchsorted(sfp, fp)
        pos = np.minimum(pos, len(sfp) - 1)
        ids = order[pos]
        ok = (sfp[pos] == fp) & (allw[ids] == words).all(axis=1)
        return np.where(ok, ids, -1)

    def sign_words(self, ids) -> np.ndarray:
        return self._fingerprints()[0][np.asarray(ids, dtype=np.int64)]

    # -- misc ---------------------------------------------------------------

    @property
    def dimension(self) -> int:
        if self._dimension is None:
            self._dimension = _dimension(self)
        return self._dimension

    def __repr__(self):
        return (f"CubeBall(kind={self.kind!r}, vertices={self.n}, edges={self.m}, "
                f"radius={self.radius}, squares={len(self.squares)})")


# --------------------------------------------------------------------------
# certification

def certify(ball: CubeBall, points: Sequence[int], mode: str = "interval") -> Certification:
    """Certification rule for a query over ``points``.

    interval/median: for every pair, min(d(base, x), d(base, y)) + d(x, y) <= radius,
    so every host geodesic between the two stays inside the window.
    hull/subalgebra: max d(base, x) + diam * (dim + 1) <= radius.
    """
    if ball.exact:
        return Certification(CERTIFIED, "window is convex in its host")
    pts = sorted({int(p) for p in points})
    db = ball.dist_base[pts]
    far = int(db.max()) if pts else 0
    diam = 0
    rows = None
    if len(pts) > 1:
        rows = ball.distance_rows(pts)[:, pts]
        diam = int(rows.max())
    if mode == "interval":
        need = far if rows is None else int((np.minimum(db[:, None], db[None, :]) + rows).max())
    else:
        need = far + diam * (ball.dimension + 1)
    if need <= ball.radius:
        return Certification(CERTIFIED, f"{mode}: {need} <= radius {ball.radius}")
    return Certification(TRUNCATED, f"{mode}: {need} > radius {ball.radius}")


# --------------------------------------------------------------------------
# operations

def theta_classes(ball: CubeBall) -> list:
    return ball.theta


def interval(ball: CubeBall, x, y):
    x, y = ball.vid(x), ball.vid(y)
    dx, dy = ball.distances(x), ball.distances(y)
    members = np.flatnonzero(dx + dy == dx[y])
    return frozenset(members.tolist()), certify(ball, (x, y), "interval")


def median(ball: CubeBall, x, y, z):
    """Median of three vertices by triple interval intersection."""
    x, y, z = ball.vid(x), ball.vid(y), ball.vid(z)
    cert = certify(ball, (x, y, z), "interval")
    dx, dy, dz = ball.distances(x), ball.distances(y), ball.distances(z)
    hit = (dx + dy == dx[y]) & (dy + dz == dy[z]) & (dx + dz == dx[z])
    cand = np.flatnonzero(hit)
    if len(cand) == 1:
        return int(cand[0]), cert
    if cert.ok:
        raise StructuralError("host not median: triple has %d medians" % len(cand),
                              witness=(x, y, z))
    return None, cert


def _median_many(ball: CubeBall, xs, ys, zs) -> np.ndarray:
    """Vectorised medians; -1 where the median is not a window vertex."""
    xs, ys, zs = (np.asarray(a, dtype=np.int64) for a in (xs, ys, zs))
    if ball.median_host:
        a, b, c = ball.sign_words(xs), ball.sign_words(ys), ball.sign_words(zs)
        maj = (a & b) | (a & c) | (b & c)
        return ball.lookup_sign_words(maj)
    out = np.empty(len(xs), dtype=np.int64)
    for t, (x, y, z) in enumerate(zip(xs, ys, zs)):
        dx, dy, dz = ball.distances(x), ball.distances(y), ball.distances(z)
        hit = np.flatnonzero((dx + dy == dx[y]) & (dy + dz == dy[z]) & (dx + dz == dx[z]))
        out[t] = hit[0] if len(hit) == 1 else -1
    return out


def halfspace_hull(ball: CubeBall, A) -> frozenset:
    """Intersection of all window halfspaces containing A."""
    A = sorted({ball.vid(a) for a in A})
    P = ball.sides[A]
    allp = P.all(axis=0)
    alln = (~P).all(axis=0)
    keep = ball.sides[:, allp].all(axis=1) & (~ball.sides[:, alln]).all(axis=1)
    return frozenset(np.flatnonzero(keep).tolist())


def _join_step(ball: CubeBall, S: list, upper: frozenset | None) -> frozenset:
    """J(S) = m(S, S, ball): union of intervals between members of S."""
    if upper is not None and len(upper) == len(S):
        return frozenset(S)
    acc = ball.mask(S)
    target = len(upper) if upper is not None else None
    rows = ball.distance_rows(S)
    dss = rows[:, S]
    for a in range(len(S) - 1):
        cond = (rows[a][None, :] + rows[a + 1:]) == dss[a, a + 1:][:, None]
        acc |= cond.any(axis=0)
        if target is not None and int(acc.sum()) == target:
            break
    return frozenset(np.flatnonzero(acc).tolist())


def hull(ball: CubeBall, A):
    """Convex hull by iterating J to a fixed point.

    Returns ``(vertex set, Certification, iterations_used)`` where
    iterations_used is the number of J applications that changed the set.
    """
    S = frozenset(ball.vid(a) for a in A)
    if not S:
        raise InputError("hull of an empty set")
    cert = certify(ball, S, "hull")
    if len(S) == 1:
        return S, cert, 0
    upper = halfspace_hull(ball, S) if ball.median_host or ball.exact else None
    it = 0
    while True:
        nxt = _join_step(ball, sorted(S), upper if upper is not None else None)
        if nxt == S:
            break
        S = nxt
        it += 1
        if upper is not None:
            upper = halfspace_hull(ball, S)
    return S, cert, it


def _median_step(ball: CubeBall, S: list, fresh: set):
    """New points of m(S,S,S) from triples touching ``fresh``; also counts misses."""
    Sarr = np.array(S, dtype=np.int64)
    is_new = np.array([s in fresh for s in S])
    found = set()
    misses = 0
    k = len(S)
    for i in range(k):
        for j in range(i + 1, k):
            if is_new[i] or is_new[j]:
                zs = Sarr[j + 1:]
            else:
                zs = Sarr[j + 1:][is_new[j + 1:]]
            if len(zs) == 0:
                continue
            xs = np.full(len(zs), Sarr[i])
            ys = np.full(len(zs), Sarr[j])
            med = _median_many(ball, xs, ys, zs)
            misses += int((med < 0).sum())
            found.update(med[med >= 0].tolist())
    return found, misses


def generate_subalgebra(ball: CubeBall, A):
    """Median subalgebra generated by A: iterate M(S) = m(S,S,S)."""
    S = frozenset(ball.vid(a) for a in A)
    if not S:
        raise InputError("subalgebra of an empty set")
    cert = certify(ball, S, "hull")
    if len(S) <= 2:
        return S, cert, 0
    fresh = set(S)
    it = 0
    total_misses = 0
    while True:
        found, misses = _median_step(ball, sorted(S), fresh)
        total_misses += misses
        new = found - S
        if not new:
            break
        S = S | new
        fresh = new
        it += 1
    if not cert.ok and ball.median_host and total_misses == 0:
        cert = Certification(CERTIFIED, "every median of the iteration lies in the window")
    return S, cert, it


def median_closed(ball: CubeBall, A):
    """None if A is median-closed, else (x, y, z, m) with m = m(x, y, z) outside A."""
    S = sorted({ball.vid(a) for a in A})
    Sarr = np.array(S, dtype=np.int64)
    inside = ball.mask(S)
    for i in range(len(S)):
        for j in range(i + 1, len(S)):
            zs = Sarr[j + 1:]
            if len(zs) == 0:
                continue
            med = _median_many(ball, np.full(len(zs), Sarr[i]), np.full(len(zs), Sarr[j]), zs)
            bad = (med >= 0) & ~inside[np.maximum(med, 0)]
            if bad.any():
                t = int(np.flatnonzero(bad)[0])
                return (int(Sarr[i]), int(Sarr[j]), int(zs[t]), int(med[t]))
    return None


def classify_subset(ball: CubeBall, A):
    S = frozenset(ball.vid(a) for a in A)
    sub, c1, _ = generate_subalgebra(ball, S)
    if sub != S:
        return NOT_SUBALGEBRA, c1
    h, c2, _ = hull(ball, S)
    return (CONVEX if h == S else SUBALGEBRA_NOT_CONVEX), (c1 & c2)


def _max_clique(nodes: list, adj: dict) -> int:
    best = 0

    def grow(clique_size, cand):
        nonlocal best
        if clique_size + len(cand) <= best:
            return
        if not cand:
            best = max(best, clique_size)
            return
        for i, v in enumerate(cand):
            if clique_size + len(cand) - i <= best:
                return
            grow(clique_size + 1, [w for w in cand[i + 1:] if w in adj[v]])

    grow(0, list(nodes))
    return best


def _dimension(ball: CubeBall) -> int:
    if ball.m == 0:
        return 0
    cr = ball.crossing
    cls = ball.edge_class
    best = 1
    for v in range(ball.n):
        incident = sorted({int(cls[k]) for _, k in ball.adj[v]})
        if len(incident) <= best:
            continue
        adj = {c: {d for d in incident if cr[c, d]} for c in incident}
        best = max(best, _max_clique(incident, adj))
    return best


def dimension(ball: CubeBall) -> int:
    """Largest number of pairwise transverse classes meeting at a vertex."""
    return ball.dimension


def wall_relation(ball: CubeBall, c1, c2):
    """Relation between two classes plus the number of classes crossing both.

    Non-transverse pairs are read from the base vertex: with h_i the side of
    class i away from the base, the pair is ``nested`` when one h_i contains
    the other and ``disjoint_unnested`` when they are disjoint.
    """
    a = c1.id if isinstance(c1, ThetaClass) else int(c1)
    b = c2.id if isinstance(c2, ThetaClass) else int(c2)
    if a == b:
        raise InputError("wall_relation needs two distinct classes")
    cr = ball.crossing
    sep = int((cr[a] & cr[b]).sum())
    if cr[a, b]:
        return TRANSVERSE, sep
    base = ball.base
    ha = ball.theta[a].side(-1 if ball.sides[base, a] else 1)
    hb = ball.theta[b].side(-1 if ball.sides[base, b] else 1)
    if not (ha & hb).any():
        return DISJOINT_UNNESTED, sep
    return NESTED, sep


def hausdorff(ball: CubeBall, A, B) -> int:
    A = ball.mask([ball.vid(a) for a in A])
    B = ball.mask([ball.vid(b) for b in B])
    da = ball.distance_to_set(A)
    db = ball.distance_to_set(B)
    return int(max(da[B].max(), db[A].max()))


def is_median_graph(ball: CubeBall, triples: Iterable | None = None) -> bool:
    """Brute-force check: every (given) triple has exactly one median."""
    if triples is None:
        triples = itertools.combinations(range(ball.n), 3)
    for x, y, z in triples:
        dx, dy, dz = ball.distances(x), ball.distances(y), ball.distances(z)
        hit = (dx + dy == dx[y]) & (dy + dz == dy[z]) & (dx + dz == dx[z])
        if int(hit.sum()) != 1:
            return False
    return True
