"""Independent reference computations used as test oracles.

Nothing here imports the engines under test except for plain data types.
"""

import itertools
from collections import deque
from fractions import Fraction
import math

import numpy as np


# -- Coxeter groups through the Tits representation ------------------------

def tits_matrices(labels, m):
    """Reflection matrices σ_s(v) = v - 2B(e_s, v) e_s, exact where possible.

    2cos(π/m) is an integer for m in {2, 3, ∞-as-(-1)}; m = 4, 6 use floats
    rounded to 9 places which is plenty for the tiny groups we enumerate.
    """
    n = len(labels)
    B = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i == j:
                B[i, j] = 1
            elif m[i][j] == math.inf:
                B[i, j] = -1
            else:
                B[i, j] = -math.cos(math.pi / m[i][j])
    mats = []
    for s in range(n):
        S = np.eye(n)
        S[s, :] -= 2 * B[s, :]
        mats.append(S)
    return mats


def _key(M):
    return tuple(np.round(M, 9).ravel().tolist())


def matrix_ball(gen_mats, radius):
    """Distinct group elements of word length ≤ radius, via matrices."""
    n = gen_mats[0].shape[0]
    start = np.eye(n)
    seen = {_key(start): 0}
    frontier = [start]
    for r in range(1, radius + 1):
        nxt = []
        for M in frontier:
            for G in gen_mats:
                P = M @ G
                k = _key(P)
                if k not in seen:
                    seen[k] = r
                    nxt.append(P)
        frontier = nxt
    return seen


def word_matrix(gen_mats, labels, word):
    M = np.eye(gen_mats[0].shape[0])
    for tok in word.split():
        if tok != "1":
            M = M @ gen_mats[list(labels).index(tok)]
    return M


def racg_matrix(vertices, edges):
    m = [[1 if i == j else (2 if {a, b} in edges else math.inf)
          for j, b in enumerate(vertices)] for i, a in enumerate(vertices)]
    return m


# -- graphs ----------------------------------------------------------------

def bfs(adj, s):
    d = {s: 0}
    q = deque([s])
    while q:
        v = q.popleft()
        for w in adj[v]:
            if w not in d:
                d[w] = d[v] + 1
                q.append(w)
    return d


def adjacency(n, edges):
    adj = {i: set() for i in range(n)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def all_distances(adj):
    return {v: bfs(adj, v) for v in adj}


def djokovic_classes(adj):
    """Θ-classes by closing the Djoković relation transitively, the slow way."""
    D = all_distances(adj)
    edges = sorted({(min(a, b), max(a, b)) for a in adj for b in adj[a]})
    parent = list(range(len(edges)))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x
    for i, (a, b) in enumerate(edges):
        for j, (x, y) in enumerate(edges):
            if D[a][x] + D[b][y] != D[a][y] + D[b][x]:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(len(edges)):
        groups.setdefault(find(i), []).append(edges[i])
    return list(groups.values())


def interval(D, x, y):
    return {v for v in D if D[x][v] + D[v][y] == D[x][y]}


def medians(D, x, y, z):
    return interval(D, x, y) & interval(D, y, z) & interval(D, x, z)


def hull_by_intervals(D, A):
    """Smallest set containing A closed under geodesic intervals."""
    S = set(A)
    while True:
        T = set(S)
        for x, y in itertools.combinations(S, 2):
            T |= interval(D, x, y)
        if T == S:
            return S
        S = T


def subalgebra_by_medians(D, A):
    S = set(A)
    while True:
        T = set(S)
        for x, y, z in itertools.combinations(S, 3):
            T |= medians(D, x, y, z)
        if T == S:
            return S
        S = T


# -- permutation models of finite Coxeter groups ---------------------------

def compose(p, q):
    """p after q, permutations as tuples."""
    return tuple(p[i] for i in q)


def closure(gens):
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = compose(g, s)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


def signed_perm_gens(n, type_b):
    """Generators of S_n (type A_{n-1}) or the hyperoctahedral group B_n acting on ±1..±n.

    Points are encoded as 0..2n-1 with i ↔ i + n the sign flip.
    """
    gens = []
    for i in range(n - 1):
        p = list(range(2 * n))
        p[i], p[i + 1] = i + 1, i
        p[i + n], p[i + 1 + n] = i + 1 + n, i + n
        gens.append(tuple(p))
    if type_b:
        p = list(range(2 * n))
        p[n - 1], p[2 * n - 1] = 2 * n - 1, n - 1
        gens.append(tuple(p))
    return gens


def involutions(group):
    ident = tuple(range(len(next(iter(group)))))
    return {g for g in group if g != ident and compose(g, g) == ident}


# -- lattice helpers -------------------------------------------------------

def staircase(h, x_first=True):
    """Monotone staircase from (-h,-h) to (h,h) hugging the diagonal."""
    x = y = -h
    pts = [(x, y)]
    while (x, y) != (h, h):
        if (x == y) == x_first:
            x += 1
        else:
            y += 1
        pts.append((x, y))
    return pts


def primitive_axis_parallel(A, bound):
    """All primitive v (first nonzero positive) with |v_i| ≤ bound and Av axis-parallel."""
    n = len(A)
    out = set()
    for v in itertools.product(range(-bound, bound + 1), repeat=n):
        if all(x == 0 for x in v) or math.gcd(*v) != 1:
            continue
        if next(x for x in v if x != 0) < 0:
            continue
        Av = [sum(Fraction(A[i][j]) * v[j] for j in range(n)) for i in range(n)]
        if sum(1 for x in Av if x != 0) == 1:
            out.add(tuple(v))
    return out


def distance_matrix(n, edges):
    """All-pairs distances by frontier expansion on a dense adjacency matrix."""
    A = np.zeros((n, n), dtype=bool)
    for a, b in edges:
        A[a, b] = A[b, a] = True
    D = np.full((n, n), -1, dtype=np.int64)
    reached = np.eye(n, dtype=bool)
    D[reached] = 0
    frontier = reached.copy()
    step = 0
    Af = A.astype(np.float32)
    while frontier.any():
        step += 1
        nxt = (frontier.astype(np.float32) @ Af > 0) & ~reached
        D[nxt] = step
        reached |= nxt
        frontier = nxt
    return D


def join_closure_steps(D, A, steps):
    """J^steps(A) with J(S) the union of all intervals between points of S."""
    S = np.zeros(len(D), dtype=bool)
    S[list(A)] = True
    for _ in range(steps):
        idx = np.flatnonzero(S)
        T = S.copy()
        for i in idx:
            on = (D[i][:, None] + D[idx].T) == D[i, idx][None, :]
            T |= on.any(axis=1)
        S = T
    return frozenset(np.flatnonzero(S).tolist())


def median_closure(D, A):
    """(closure, rounds) under m(x, y, z) = argmin d(x,·)+d(y,·)+d(z,·)."""
    S = set(A)
    rounds = 0
    while True:
        idx = sorted(S)
        new = set()
        for i, j in itertools.combinations(idx, 2):
            row = D[i] + D[j]
            for k in idx:
                if k <= j:
                    continue
                new.add(int(np.argmin(row + D[k])))
        if new <= S:
            return frozenset(S), rounds
        S |= new
        rounds += 1


def unique_medians(D, triples):
    """True iff every triple has exactly one vertex in all three intervals."""
    for x, y, z in triples:
        inside = ((D[x] + D[y] == D[x, y]) & (D[y] + D[z] == D[y, z]) & (D[x] + D[z] == D[x, z]))
        if inside.sum() != 1:
            return False
    return True
