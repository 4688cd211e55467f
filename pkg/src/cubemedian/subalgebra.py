"""Diagnostics for a median subalgebra M sitting inside a host window.

Host halfspaces are pairs ``(class_id, sign)``; sign +1 is the ``plus`` side
of the Θ-class. Halfspaces of M are pairs ``(wall_id, sign)`` in the same
convention, relative to the member order of the view.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import config
from .errors import Inconclusive, InputError, StructuralError
from .median_core import CubeBall, certify, hull, median_closed

VERIFIED = "verified"


@dataclass
class MWall:
    id: int
    classes: tuple             # host classes restricting to this wall
    plus: np.ndarray = field(repr=False)   # member mask (aligned with view.member_list)


@dataclass(eq=False)
class SubalgebraView:
    host: CubeBall
    members: frozenset
    member_list: list
    walls_of_M: list
    res: dict                  # host class -> (wall id, sign of the class's plus side)
    res_injective: bool
    edge_connected: bool
    signs: np.ndarray = field(repr=False)   # members x walls, True on the plus side

    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def mask(self) -> np.ndarray:
        return self.host.mask(self.member_list)

    def certified_hull(self) -> frozenset:
        if "hull" not in self._cache:
            H, cert, _ = hull(self.host, self.member_list)
            if not cert.ok:
                raise Inconclusive("hull of the members is not certified: " + cert.reason)
            self._cache["hull"] = H
        return self._cache["hull"]

    def member_distances(self) -> np.ndarray:
        if "D" not in self._cache:
            self._cache["D"] = self.host.distance_rows(self.member_list)[:, self.member_list]
        return self._cache["D"]

    def distance_to_members(self) -> np.ndarray:
        if "dM" not in self._cache:
            self._cache["dM"] = self.host.distance_to_set(self.mask)
        return self._cache["dM"]

    @property
    def hm_classes(self) -> list:
        return sorted(self.res)

    def index(self, v) -> int:
        return self.member_list.index(self.host.vid(v))

    def intrinsic_distance(self, x, y) -> int:
        """Number of walls of M separating x and y."""
        i, j = self.index(x), self.index(y)
        return int((self.signs[i] != self.signs[j]).sum())

    def restrict(self, hs):
        """res_M of a host halfspace, as a halfspace of M."""
        c, s = hs
        if c not in self.res:
            raise InputError(f"class {c} does not cut M")
        w, orient = self.res[c]
        return (w, s * orient)

    def m_halfspace(self, hs) -> frozenset:
        w, s = hs
        p = self.walls_of_M[w].plus
        sel = p if s > 0 else ~p
        return frozenset(self.member_list[i] for i in np.flatnonzero(sel))


def analyze_subalgebra(host: CubeBall, members) -> SubalgebraView:
    """Walls of M, the restriction map and edge-connectedness."""
    mlist = sorted({host.vid(v) for v in members})
    if not mlist:
        raise InputError("empty member set")
    bad = median_closed(host, mlist)
    if bad is not None:
        raise StructuralError("members are not median-closed", witness=bad)
    S = host.sides[mlist]
    cut = np.flatnonzero(S.any(axis=0) & ~S.all(axis=0))
    walls, res, keys = [], {}, {}
    for c in cut.tolist():
        col = S[:, c]
        orient = -1 if col[0] else 1      # normalise: first member on the minus side
        norm = col if orient > 0 else ~col
        key = norm.tobytes()
        if key not in keys:
            keys[key] = len(walls)
            walls.append(MWall(len(walls), (), norm.copy()))
        w = keys[key]
        walls[w].classes = walls[w].classes + (c,)
        res[c] = (w, orient)
    signs = (np.stack([w.plus for w in walls], axis=1) if walls
             else np.zeros((len(mlist), 0), bool))
    inside = set(mlist)
    seen = {mlist[0]}
    queue = deque([mlist[0]])
    while queue:
        v = queue.popleft()
        for w in host.neighbors(v):
            if w in inside and w not in seen:
                seen.add(w)
                queue.append(w)
    return SubalgebraView(host, frozenset(mlist), mlist, walls, res,
                          all(len(w.classes) == 1 for w in walls), len(seen) == len(mlist), signs)


def metric_agreement(view: SubalgebraView) -> list:
    """Member pairs where wall-count distance differs from host distance."""
    rows = view.member_distances()
    S = view.signs.astype(np.int16)
    dm = (S[:, None, :] != S[None, :, :]).sum(axis=2)
    bad = np.argwhere(dm != rows)
    return [(view.member_list[i], view.member_list[j]) for i, j in bad if i < j]


# --------------------------------------------------------------------------
# carriers

def _m_neighbours_across(view: SubalgebraView, w: int) -> np.ndarray:
    """Member indices x with a member y differing from x only at wall w."""
    rows = {r.tobytes(): i for i, r in enumerate(view.signs)}
    out = np.zeros(len(view.member_list), bool)
    for i, r in enumerate(view.signs):
        f = r.copy()
        f[w] = not f[w]
        if f.tobytes() in rows:
            out[i] = True
    return out


def carriers(view: SubalgebraView, wall: int):
    """(C_M(w), C_X(w) ∩ M) for a wall of M."""
    if not 0 <= wall < len(view.walls_of_M):
        raise InputError(f"no wall {wall} in M")
    cm = _m_neighbours_across(view, wall)
    host = view.host
    touched = np.zeros(host.n, bool)
    for c in view.walls_of_M[wall].classes:
        eids = np.array(host.theta[c].edges, dtype=np.int64)
        touched[host.eu[eids]] = True
        touched[host.ev[eids]] = True
    c_m = frozenset(view.member_list[i] for i in np.flatnonzero(cm))
    c_x = frozenset(v for v in view.member_list if touched[v])
    return c_m, c_x


def halfspace_carrier(view: SubalgebraView, hs) -> frozenset:
    """C_M of a halfspace of M: its part of the wall's M-carrier."""
    c_m, _ = carriers(view, hs[0])
    return c_m & view.m_halfspace(hs)


def carrier_density(view: SubalgebraView, walls=None) -> int:
    """Largest distance from a point of C_X ∩ M to C_M, over the given walls of M."""
    D = view.member_distances()
    pos = {v: i for i, v in enumerate(view.member_list)}
    worst = 0
    for w in (range(len(view.walls_of_M)) if walls is None else walls):
        c_m, c_x = carriers(view, w)
        if not c_m:
            continue
        sub = D[np.ix_([pos[v] for v in sorted(c_x)], [pos[v] for v in sorted(c_m)])]
        worst = max(worst, int(sub.min(axis=1).max()))
    return worst


# --------------------------------------------------------------------------
# grids

@dataclass
class GridWitness:
    n: int
    h_chain: list              # host halfspaces h_0 ⊋ … ⊋ h_n
    k_chain: list
    center: int                # hull point in h_n ∩ k_n
    center_distance: int       # d(center, M)
    covering_certificate: dict # member -> "h" (in h_0*) or "k" (in k_0*)


def _quadrants(S: np.ndarray):
    s = S.astype(np.float64)     # float so the products go through BLAS
    t = 1.0 - s
    # Q[sa][sb][a, b] = #{v : v on side sa of a and side sb of b}, sides 0 = minus, 1 = plus
    q = ((t.T @ t, t.T @ s), (s.T @ t, s.T @ s))
    return tuple(tuple(np.rint(m).astype(np.int64) for m in row) for row in q)


class _GridSearch:
    def __init__(self, view: SubalgebraView):
        host = view.host
        self.view = view
        self.host = host
        self.cls = np.array(view.hm_classes, dtype=np.int64)
        S = host.sides[:, self.cls]
        self.Q = _quadrants(S)
        self.QM = _quadrants(S[view.member_list])
        self.cross = host.crossing[np.ix_(self.cls, self.cls)]
        self.S = S

    def best_pair(self, c):
        """Longest chains available from candidate c: (score, i, j, L, order)."""
        side = self.S[c].astype(np.int64)     # 1 where c is on the plus side
        u = len(self.cls)
        idx = np.arange(u)
        Q, QM = self.Q, self.QM
        # sizes of the halfspaces containing c
        size = np.where(side == 1, Q[1][1][idx, idx], Q[0][0][idx, idx])
        # contained[i, j]: h_i ⊆ h_j, i.e. |h_i ∩ h_j*| = 0
        si = side[:, None]
        sj = side[None, :]
        comp = 1 - sj
        inter_out = np.choose(si * 2 + comp, [Q[0][0], Q[0][1], Q[1][0], Q[1][1]])
        contained = (inter_out == 0)
        np.fill_diagonal(contained, False)
        both_m = np.choose(si * 2 + sj, [QM[0][0], QM[0][1], QM[1][0], QM[1][1]])
        disjoint_m = both_m == 0
        order = np.argsort(size, kind="stable")
        L = np.ones(u, dtype=np.int64)
        for i in order:
            below = contained[:, i]
            if below.any():
                L[i] = 1 + L[below].max()
        valid = disjoint_m & self.cross
        if not valid.any():
            return 0, None, None, L, contained
        score = np.where(valid, np.minimum(L[:, None], L[None, :]), 0)
        best = int(score.max())
        i, j = map(int, np.argwhere(score == best)[0])
        return best, i, j, L, contained

    def chain(self, start, length, L, contained):
        out = [start]
        cur = start
        while len(out) < length:
            kids = np.flatnonzero(contained[:, cur] & (L == L[cur] - 1))
            cur = int(kids[0])
            out.append(cur)
        return out

    def halfspace(self, i, c):
        return (int(self.cls[i]), 1 if self.S[c, i] else -1)


def find_grid(view: SubalgebraView, n: int, search=None):
    """A grid of host hyperplanes witnessing that M is far from its hull.

    Hull points c outside M are scanned by decreasing distance to M. A grid
    of size n needs d(c, M) >= n + 1, so closer candidates are skipped. For
    each candidate the halfspaces of ℋ_M containing c are compared by
    nesting, and the longest chains below a pair (h_0, k_0) with
    M ∩ h_0 ∩ k_0 = ∅ are extracted. Returns None when no candidate works.
    """
    if n < 0:
        raise InputError("n must be non-negative")
    if not view.edge_connected:
        raise InputError("find_grid needs an edge-connected subalgebra")
    host = view.host
    H = view.certified_hull()
    dM = view.distance_to_members()
    cand = [v for v in H if v not in view.members and dM[v] >= n + 1]
    if not cand:
        return None
    cand.sort(key=lambda v: (-int(dM[v]), v))
    gs = search or view._cache.get("grid") or view._cache.setdefault("grid", _GridSearch(view))
    for c in cand:
        best, i, j, L, contained = gs.best_pair(c)
        if best >= n + 1:
            hi = gs.chain(i, n + 1, L, contained)
            ki = gs.chain(j, n + 1, L, contained)
            h_chain = [gs.halfspace(t, c) for t in hi]
            k_chain = [gs.halfspace(t, c) for t in ki]
            h0 = host.halfspace_mask(h_chain[0])
            cover = {v: ("h" if not h0[v] else "k") for v in view.member_list}
            return GridWitness(n, h_chain, k_chain, int(c), int(dM[c]), cover)
    return None


def max_grid(view: SubalgebraView) -> int:
    """Largest n with a grid witness (-1 when M is convex)."""
    H = view.certified_hull()
    gs = view._cache.get("grid") or view._cache.setdefault("grid", _GridSearch(view))
    dM = view.distance_to_members()
    best = 0
    found = False
    for c in sorted((v for v in H if v not in view.members), key=lambda v: (-int(dM[v]), v)):
        if dM[c] <= best:
            break
        s = gs.best_pair(c)[0]
        if s >= 1:
            found = True
            best = max(best, s)
    return best - 1 if found else -1


def verify_grid(view: SubalgebraView, w: GridWitness):
    """Independent check of a witness; returns a hull point in h_n ∩ k_n far from M."""
    host = view.host
    masks_h = [host.halfspace_mask(h) for h in w.h_chain]
    masks_k = [host.halfspace_mask(k) for k in w.k_chain]
    for chain in (masks_h, masks_k):
        for a, b in zip(chain, chain[1:]):
            if not ((b & ~a).sum() == 0 and (a & ~b).any()):
                raise StructuralError("chain is not strictly nested")
    cr = host.crossing
    for h in w.h_chain:
        for k in w.k_chain:
            if not cr[h[0], k[0]]:
                raise StructuralError("h and k are not transverse", witness=(h, k))
    M = view.mask
    if (M & masks_h[0] & masks_k[0]).any():
        raise StructuralError("members meet h_0 ∩ k_0")
    for c in (h[0] for h in w.h_chain + w.k_chain):
        if c not in view.res:
            raise StructuralError("halfspace outside ℋ_M", witness=c)
    region = host.mask(view.certified_hull()) & masks_h[-1] & masks_k[-1]
    if not region.any():
        raise StructuralError("Helly point missing")
    dM = view.distance_to_members()
    pts = np.flatnonzero(region)
    far = int(pts[np.argmax(dM[pts])])
    if dM[far] <= w.n:
        raise StructuralError("Helly point is too close to M")
    return far, int(dM[far])


# --------------------------------------------------------------------------
# escape profile

def qc_profile(view: SubalgebraView, max_len: int) -> dict:
    """escape(ℓ) for ℓ = 0..max_len as a running maximum.

    ``raw[ℓ]`` is the largest distance from M of a point of I(x, y), over
    member pairs at distance exactly ℓ; ``escape`` is its running maximum.
    Pairs whose interval is not certified are counted and skipped.
    """
    host = view.host
    dM = host.distance_to_set(view.mask)
    ml = view.member_list
    rows = host.distance_rows(ml)
    raw = [0] * (max_len + 1)
    seen = [False] * (max_len + 1)
    truncated = 0
    for a in range(len(ml)):
        ra = rows[a]
        for b in range(a, len(ml)):
            d = int(ra[ml[b]])
            if d > max_len:
                continue
            if not certify(host, (ml[a], ml[b]), "interval").ok:
                truncated += 1
                continue
            mask = (ra + rows[b]) == d
            e = int(dM[mask].max())
            seen[d] = True
            if e > raw[d]:
                raw[d] = e
    escape = []
    cur = 0
    for v in raw:
        cur = max(cur, v)
        escape.append(cur)
    return {"raw": raw, "escape": escape, "observed": seen, "truncated_pairs": truncated}


# --------------------------------------------------------------------------
# bridges and the minimal geodesic

@dataclass
class Bridge:
    vertices: frozenset
    p: int                     # in C_M(k*)
    q: int                     # in C_M(h*)
    carrier_h: frozenset       # C_M(h*)
    carrier_k: frozenset       # C_M(k*)
    distance: int


def bridge(view: SubalgebraView, hM, kM) -> Bridge:
    """Bridge between disjoint halfspaces hM, kM of M.

    Union of the member geodesics between closest points of C_M(hM*) and
    C_M(kM*); p ∈ C_M(kM*) and q ∈ C_M(hM*) are the lexicographically first
    closest pair.
    """
    if not view.edge_connected:
        raise InputError("bridge needs an edge-connected subalgebra")
    A, B = view.m_halfspace(hM), view.m_halfspace(kM)
    if A & B:
        raise InputError("halfspaces of M are not disjoint")
    host = view.host
    ch = halfspace_carrier(view, (hM[0], -hM[1]))
    ck = halfspace_carrier(view, (kM[0], -kM[1]))
    ch_l, ck_l = sorted(ch), sorted(ck)
    rows = host.distance_rows(ck_l)[:, ch_l]
    dmin = int(rows.min())
    pairs = [(ck_l[i], ch_l[j]) for i, j in np.argwhere(rows == dmin)]
    acc = np.zeros(host.n, bool)
    for p, q in pairs:
        dp, dq = host.distances(p), host.distances(q)
        acc |= (dp + dq) == dmin
    acc &= view.mask
    p, q = pairs[0]
    return Bridge(frozenset(np.flatnonzero(acc).tolist()), int(p), int(q),
                  frozenset(ch), frozenset(ck), dmin)


@dataclass
class AlphaReport:
    path: list
    profile: list                # d(α(t), k)
    entered: list                # host halfspace entered at each step
    kinds: list                  # "par" / "perp" per step
    omega_perp: list
    omega_parallel: list
    segments: list               # (kind, length)
    minimal: bool                # lexicographically least profile among 𝒢_M(p, q)
    exhaustive: bool             # brute-force enumeration finished within budget
    geodesics_enumerated: int
    transverse_ok: bool       # ∥ entered before ⊥ ⇒ transverse
    disjoint_ok: bool         # consecutive ∥ then ⊥ ⇒ M ∩ j∥* ∩ j⊥ = ∅
    k_observed: int              # longest segment
    carrier_density: int
    p: int = -1
    q: int = -1


def _geodesic_layers(view, p, q):
    host = view.host
    dp, dq = host.distances(p), host.distances(q)
    D = int(dp[q])
    on = view.mask & ((dp + dq) == D)
    # keep only vertices reachable from p and co-reachable to q inside M
    fwd = np.zeros(host.n, bool)
    fwd[p] = True
    for t in range(D):
        for v in np.flatnonzero(fwd & (dp == t)):
            for w in host.neighbors(int(v)):
                if on[w] and dp[w] == t + 1:
                    fwd[w] = True
    back = np.zeros(host.n, bool)
    back[q] = True
    for t in range(D, 0, -1):
        for v in np.flatnonzero(back & (dp == t)):
            for w in host.neighbors(int(v)):
                if on[w] and fwd[w] and dp[w] == t - 1:
                    back[w] = True
    alive = fwd & back
    if not alive[q]:
        raise StructuralError("no geodesic from p to q inside M", witness=(p, q))
    return alive, dp, D


def _enumerate_profiles(view, p, q, alive, dp, dk, D, budget):
    host = view.host
    best = None
    count = 0
    stack = [(p, [int(dk[p])])]
    while stack:
        v, prof = stack.pop()
        if v == q:
            count += 1
            if best is None or prof < best:
                best = prof
            if count >= budget:
                return best, count, False
            continue
        t = len(prof) - 1
        for w in host.neighbors(v):
            if alive[w] and dp[w] == t + 1:
                stack.append((w, prof + [int(dk[w])]))
    return best, count, True


def minimal_geodesic_alpha(view: SubalgebraView, h, k, budget=None) -> AlphaReport:
    """≺-minimal geodesic from p ∈ C_M(k*) to q ∈ C_M(h*) inside M.

    ≺ compares t ↦ d(β(t), k) lexicographically; the minimum is computed
    layer by layer and cross-checked by enumerating geodesics up to the
    geodesic budget.
    """
    host = view.host
    h, k = (int(h[0]), int(h[1])), (int(k[0]), int(k[1]))
    if not host.crossing[h[0], k[0]]:
        raise InputError("h and k are not transverse in the host")
    hmask, kmask = host.halfspace_mask(h), host.halfspace_mask(k)
    if (view.mask & hmask & kmask).any():
        raise InputError("M meets h ∩ k")
    hM, kM = view.restrict(h), view.restrict(k)
    br = bridge(view, hM, kM)
    p, q = br.p, br.q
    dk = host.distance_to_set(kmask)
    alive, dp, D = _geodesic_layers(view, p, q)
    # layered lexicographic minimum
    frontier = {p}
    parents = {p: None}
    profile = [int(dk[p])]
    for t in range(D):
        succ = {}
        for v in sorted(frontier):
            for w in host.neighbors(v):
                if alive[w] and dp[w] == t + 1 and w not in succ:
                    succ[w] = v
        low = min(int(dk[w]) for w in succ)
        frontier = {w for w in succ if dk[w] == low}
        for w in frontier:
            parents[w] = succ[w]
        profile.append(low)
    if q not in frontier:
        raise StructuralError("layered minimum does not reach q")
    path = [q]
    while parents[path[-1]] is not None:
        path.append(parents[path[-1]])
    path.reverse()
    limit = config.geodesic_budget(budget)
    best, count, exhaustive = _enumerate_profiles(view, p, q, alive, dp, dk, D, limit)
    minimal = best == profile if exhaustive else best >= profile
    # halfspace bookkeeping
    resh = host.mask(view.m_halfspace(hM))
    omega_perp, omega_par = [], []
    S = host.sides
    for c in range(len(host.theta)):
        side_p = bool(S[p, c])
        other = S[:, c] != side_p
        if (resh & ~other).any():
            continue
        j = (c, 1 if not side_p else -1)
        if (other & kmask).any():
            omega_perp.append(j)
        else:
            omega_par.append(j)
    par_set, perp_set = set(omega_par), set(omega_perp)
    entered, kinds = [], []
    for a, b in zip(path, path[1:]):
        c = int(host.edge_class[host.edge_id(a, b)])
        j = (c, 1 if S[b, c] else -1)
        entered.append(j)
        kinds.append("par" if j in par_set else "perp" if j in perp_set else "other")
    if "other" in kinds:
        raise StructuralError("α crosses a hyperplane outside ℋ(p | res h)")
    segments = []
    for kd in kinds:
        if segments and segments[-1][0] == kd:
            segments[-1] = (kd, segments[-1][1] + 1)
        else:
            segments.append((kd, 1))
    cr = host.crossing
    transverse = True
    for s in range(len(kinds)):
        if kinds[s] != "par":
            continue
        for t in range(s + 1, len(kinds)):
            if kinds[t] == "perp" and not cr[entered[s][0], entered[t][0]]:
                transverse = False
    disjoint = True
    starts = np.cumsum([0] + [ln for _, ln in segments])
    M = view.mask
    for a in range(len(segments) - 1):
        if segments[a][0] == "par" and segments[a + 1][0] == "perp":
            js = entered[starts[a]:starts[a + 1]]
            jt = entered[starts[a + 1]:starts[a + 2]]
            for x in js:
                for y in jt:
                    xm = host.halfspace_mask((x[0], -x[1]))
                    ym = host.halfspace_mask(y)
                    if (M & xm & ym).any():
                        disjoint = False
    return AlphaReport(
        path=[int(v) for v in path], profile=profile, entered=entered, kinds=kinds,
        omega_perp=omega_perp, omega_parallel=omega_par, segments=segments,
        minimal=bool(minimal), exhaustive=exhaustive, geodesics_enumerated=count,
        transverse_ok=transverse, disjoint_ok=disjoint,
        k_observed=max((ln for _, ln in segments), default=0),
        carrier_density=carrier_density(view, [hM[0], kM[0]]), p=int(p), q=int(q))


# --------------------------------------------------------------------------
# chains along a geodesic

@dataclass
class ChainWitness:
    k: int
    i_indices: list
    j_indices: list


@dataclass
class NoChain:
    reason: str                # "precondition" or "no witness"

    def __bool__(self):
        return False


def _strictly_contains(a, b) -> bool:
    if isinstance(a, np.ndarray):
        return bool((b & ~a).sum() == 0 and (a & ~b).any())
    a, b = frozenset(a), frozenset(b)
    return b < a


def chain_witness(h_seq, k_seq, n: int, dim: int, contains=None):
    """Index k with chains h_{i1} ⊋ … ⊋ h_{in} ⊋ h_k and k_k ⊋ k_{j1} ⊋ … ⊋ k_{jn}.

    Indices are 0-based. f(k) is the longest chain of earlier h_i strictly
    containing h_k and g(k) the longest chain of later k_j strictly inside
    k_k; the first k with both at least n is returned.
    """
    N = len(h_seq)
    if len(k_seq) != N:
        raise InputError("the two halfspace sequences must have the same length")
    if n < 0 or dim < 0:
        raise InputError("n and dim must be non-negative")
    if N <= 2 * n * dim:
        return NoChain("precondition")
    sup = contains or _strictly_contains
    f = [0] * N
    fp = [None] * N
    for a in range(N):
        for i in range(a):
            if sup(h_seq[i], h_seq[a]) and f[i] + 1 > f[a]:
                f[a], fp[a] = f[i] + 1, i
    g = [0] * N
    gp = [None] * N
    for a in range(N - 1, -1, -1):
        for j in range(a + 1, N):
            if sup(k_seq[a], k_seq[j]) and g[j] + 1 > g[a]:
                g[a], gp[a] = g[j] + 1, j
    for a in range(N):
        if f[a] >= n and g[a] >= n:
            up = []
            cur = a
            while len(up) < n:
                cur = fp[cur]
                up.append(cur)
            down = []
            cur = a
            while len(down) < n:
                cur = gp[cur]
                down.append(cur)
            return ChainWitness(a, sorted(up), down)
    return NoChain("no witness")


# --------------------------------------------------------------------------
# the cube complex of M

def subalgebra_dual(view: SubalgebraView, budget=None) -> CubeBall:
    """□(M): the cube complex dual to the walls of M."""
    from .builders.walls import Wall, WallSystem, sageev_dual
    walls = []
    full = np.zeros(view.host.n, bool)
    for w in view.walls_of_M:
        m = full.copy()
        m[np.array(view.member_list)[w.plus]] = True
        walls.append(Wall(w.id, (), m))
    ws = WallSystem(view.host, walls)
    return sageev_dual(ws, budget=budget, points=view.member_list)
