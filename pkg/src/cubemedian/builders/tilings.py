"""Cubical tilings of R^n with affine isometric actions, plus a few other
median windows (trees, products) used as test hosts.

Points of a tiling window are stored in *refined* integer coordinates: the
tiling by cubes of side 1/q is identified with Z^n, and a point k ∈ Z^n
stands for k/q. Generators act on refined coordinates by x ↦ Mx + q·t.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..errors import InputError
from ..median_core import CubeBall
from ..presentations import parse_word


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


@dataclass(frozen=True)
class Affine:
    """x ↦ Mx + t with M a signed permutation matrix and t rational."""

    M: tuple
    t: tuple

    @classmethod
    def make(cls, M, t):
        M = tuple(tuple(int(v) for v in row) for row in M)
        t = tuple(_frac(v) for v in t)
        n = len(M)
        if any(len(row) != n for row in M) or len(t) != n:
            raise InputError("matrix and translation sizes disagree")
        for row in M:
            if sorted(abs(v) for v in row) != [0] * (n - 1) + [1]:
                raise InputError(f"row {row} is not a signed permutation row")
        for col in zip(*M):
            if sorted(abs(v) for v in col) != [0] * (n - 1) + [1]:
                raise InputError("matrix is not a signed permutation")
        return cls(M, t)

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)),
                   (Fraction(0),) * n)

    @classmethod
    def translation(cls, t):
        return cls(cls.identity(len(t)).M, tuple(_frac(v) for v in t))

    @property
    def n(self):
        return len(self.t)

    def __call__(self, x):
        return tuple(sum(m * xi for m, xi in zip(row, x)) + ti for row, ti in zip(self.M, self.t))

    def __mul__(self, other: "Affine") -> "Affine":
        # (self * other)(x) = self(other(x))
        M = tuple(tuple(sum(self.M[i][k] * other.M[k][j] for k in range(self.n))
                        for j in range(self.n)) for i in range(self.n))
        t = tuple(sum(self.M[i][k] * other.t[k] for k in range(self.n)) + self.t[i]
                  for i in range(self.n))
        return Affine(M, tuple(Fraction(v) for v in t))

    def inverse(self) -> "Affine":
        MT = tuple(zip(*self.M))  # orthogonal
        t = tuple(-sum(MT[i][k] * self.t[k] for k in range(self.n)) for i in range(self.n))
        return Affine(MT, tuple(Fraction(v) for v in t))

    def is_identity(self) -> bool:
        return self == Affine.identity(self.n)

    def to_json(self) -> dict:
        return {"matrix": [list(r) for r in self.M], "translation": [str(v) for v in self.t]}

    def __pow__(self, k: int) -> "Affine":
        base = self if k >= 0 else self.inverse()
        out = Affine.identity(self.n)
        for _ in range(abs(k)):
            out = out * base
        return out


@dataclass
class AffineAction:
    """Named affine generators acting on R^n, preserving the 1/q tiling."""

    n: int
    generators: dict
    q: int = 1
    relations_declared: list = field(default_factory=list)

    def __post_init__(self):
        if self.q < 1:
            raise InputError("q must be a positive integer")
        for name, g in self.generators.items():
            if g.n != self.n:
                raise InputError(f"generator {name} has the wrong dimension")
            for v in g.t:
                if (v * self.q).denominator != 1:
                    raise InputError(f"generator {name} does not preserve the 1/{self.q} tiling")

    def word(self, w) -> Affine:
        """Exact affine map of a word; the rightmost letter acts first."""
        out = Affine.identity(self.n)
        for label, e in parse_word(w):
            if label not in self.generators:
                raise InputError(f"unknown generator {label!r}")
            out = out * (self.generators[label] ** e)
        return out

    def relation_holds(self, w) -> bool:
        return self.word(w).is_identity()

    def check_relations(self) -> dict:
        return {r: self.relation_holds(r) for r in self.relations_declared}

    def precompose(self, A) -> "AffineAction":
        """For a translation action: generator i becomes translation by column i of A."""
        names = list(self.generators)
        if len(names) != len(A[0]):
            raise InputError("matrix width must match the number of generators")
        for g in self.generators.values():
            if g.M != Affine.identity(self.n).M:
                raise InputError("precompose expects a pure translation action")
        gens = {}
        for j, name in enumerate(names):
            t = [Fraction(0)] * self.n
            for i, k in enumerate(names):
                coeff = Fraction(A[i][j])
                t = [a + coeff * b for a, b in zip(t, self.generators[k].t)]
            gens[name] = Affine(Affine.identity(self.n).M, tuple(t))
        return AffineAction(self.n, gens, self.q, [])

    @classmethod
    def from_json(cls, doc) -> "AffineAction":
        try:
            n = int(doc["n"])
            q = int(doc.get("q", 1))
            gens = {name: Affine.make(g["matrix"], g["translation"])
                    for name, g in doc["generators"].items()}
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad action document: {exc}") from None
        return cls(n, gens, q, list(doc.get("relations", [])))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "generators": {name: g.to_json() for name, g in self.generators.items()},
            "relations": list(self.relations_declared),
        }


def group_closure(gens, limit=10_000) -> set:
    """All products of the given affine maps (finite groups only)."""
    gens = list(gens)
    if not gens:
        return set()
    seen = {Affine.identity(gens[0].n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = s * g
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    if len(seen) > limit:
                        raise InputError("group closure is not finite within the limit")
        frontier = nxt
    return seen


# --------------------------------------------------------------------------
# the concrete actions

def _perm_matrix(images):
    # images[i] = (j, sign): coordinate i of the output is sign * x_j
    n = len(images)
    return tuple(tuple(s if k == j else 0 for k in range(n)) for j, s in images)


def translation_action(n: int) -> AffineAction:
    """Standard Z^n: generator e_i translates by the i-th unit vector."""
    gens = {f"e{i + 1}": Affine(Affine.identity(n).M,
                                tuple(Fraction(int(i == j)) for j in range(n)))
            for i in range(n)}
    rels = [f"e{i + 1} e{j + 1} e{i + 1}^-1 e{j + 1}^-1"
            for i in range(n) for j in range(i + 1, n)]
    return AffineAction(n, gens, 1, rels)


def action_333() -> AffineAction:
    """(3,3,3)-triangle group times Z acting on the cubical tiling of R^3."""
    rho = Affine.make(_perm_matrix([(0, 1), (2, 1), (1, 1)]), (0, 0, 0))
    sigma = Affine.make(_perm_matrix([(1, 1), (2, 1), (0, 1)]), (0, 0, 0))
    T0 = Affine.make(Affine.identity(3).M, (1, 1, 1))
    T1 = Affine.make(Affine.identity(3).M, (-2, 1, 1))
    rels = [
        "T0 rho T0^-1 rho^-1",
        "T0 sigma T0^-1 sigma^-1",
        "T0 T1 T0^-1 T1^-1",
        "rho rho",
        "sigma sigma sigma",
        "rho sigma rho sigma",
    ]
    return AffineAction(3, {"rho": rho, "sigma": sigma, "T0": T0, "T1": T1}, 1, rels)


def reflections_333(action: AffineAction | None = None) -> dict:
    """r1 = ρ, r2 = σρσ⁻¹, r3 = (T1σ²) ρ (T1σ²)⁻¹."""
    act = action or action_333()
    rho, sigma, T1 = (act.generators[k] for k in ("rho", "sigma", "T1"))
    conj = T1 * sigma * sigma
    return {
        "r1": rho,
        "r2": sigma * rho * sigma.inverse(),
        "r3": conj * rho * conj.inverse(),
    }


def dinf2_standard() -> AffineAction:
    """D∞ × D∞ acting factorwise by reflections in half-integer lines."""
    gens = {
        "a": Affine.make([[-1, 0], [0, 1]], (1, 0)),
        "c": Affine.make([[-1, 0], [0, 1]], (-1, 0)),
        "b": Affine.make([[1, 0], [0, -1]], (0, 1)),
        "d": Affine.make([[1, 0], [0, -1]], (0, -1)),
    }
    rels = ["a a", "c c", "b b", "d d", "a b a b", "a d a d", "c b c b", "c d c d"]
    return AffineAction(2, gens, 1, rels)


def dinf2_rotated() -> AffineAction:
    """D∞ × D∞ acting by reflections in diagonal lines (axes at π/4)."""
    gens = {
        "a": Affine.make([[0, -1], [-1, 0]], (1, 1)),
        "c": Affine.make([[0, -1], [-1, 0]], (-1, -1)),
        "b": Affine.make([[0, 1], [1, 0]], (1, -1)),
        "d": Affine.make([[0, 1], [1, 0]], (-1, 1)),
    }
    rels = ["a a", "c c", "b b", "d d", "a b a b", "a d a d", "c b c b", "c d c d"]
    return AffineAction(2, gens, 1, rels)


# --------------------------------------------------------------------------
# windows

def _fmt(k: int, q: int) -> str:
    f = Fraction(k, q)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _box(n: int, h: int, q: int = 1, kind="box"):
    side = 2 * h + 1
    shape = (side,) * n
    coords = list(itertools.product(range(-h, h + 1), repeat=n))
    strides = [side ** (n - 1 - i) for i in range(n)]
    edges = []
    for idx, c in enumerate(coords):
        for i in range(n):
            if c[i] < h:
                edges.append((idx, idx + strides[i], f"x{i + 1}"))
    base = sum((0 + h) * s for s in strides)
    labels = ["(" + ",".join(_fmt(v, q) for v in c) + ")" for c in coords]
    return coords, labels, edges, base, shape, strides


def _install_box_theta(ball, n, h):
    # class (i, k) separates x_i <= k from x_i >= k + 1
    P = np.array(ball.payload, dtype=np.int64)
    lo = P[ball.eu]
    axis = np.argmax(P[ball.ev] != lo, axis=1)
    level = lo[np.arange(ball.m), axis]
    cls = axis * (2 * h) + (level + h)
    plus = [P[:, i] > k for i in range(n) for k in range(-h, h)]
    ball.install_theta(cls, plus)


def tiling_window(action: AffineAction | None, halfwidth: int, n: int | None = None) -> CubeBall:
    """Window [-h, h]^n of refined lattice points with the action recorded.

    ``halfwidth`` counts refined steps, so the window is [-h/q, h/q]^n in R^n.
    ``ball.meta['action']`` maps each generator name (and ``name^-1``) to an
    array of image ids, -1 where the image leaves the window.
    """
    if halfwidth < 0:
        raise InputError("halfwidth must be non-negative")
    if action is None:
        if n is None:
            raise InputError("need an action or a dimension")
        action = AffineAction(n, {}, 1, [])
    n, q, h = action.n, action.q, halfwidth
    coords, labels, edges, base, shape, strides = _box(n, h, q)
    ball = CubeBall(labels, edges, base=base, radius=n * h, payload=coords,
                    median_host=True, exact=True, kind=f"tiling:{n}")
    _install_box_theta(ball, n, h)
    table = {}
    P = np.array(coords, dtype=np.int64)
    for name, g in action.generators.items():
        for label, aff in ((name, g), (name + "^-1", g.inverse())):
            M = np.array(aff.M, dtype=np.int64)
            t = np.array([int(v * q) for v in aff.t], dtype=np.int64)
            img = P @ M.T + t
            inside = (np.abs(img) <= h).all(axis=1)
            ids = ((img + h) * np.array(strides)).sum(axis=1)
            table[label] = np.where(inside, ids, -1)
    ball.meta.update({"action": table, "affine": action, "halfwidth": h, "q": q})
    return ball


def grid_window(n: int, halfwidth: int) -> CubeBall:
    """Box window of Z^n with the standard translation action."""
    return tiling_window(translation_action(n), halfwidth)


def point_id(ball: CubeBall, point) -> int:
    """Vertex id of a refined-coordinate point of a tiling window."""
    return ball.vid(tuple(int(v) for v in point))


def act(ball: CubeBall, word, vertices) -> list:
    """Apply a word (rightmost letter first) to vertex ids; -1 when it leaves the window."""
    table = ball.meta["action"]
    out = []
    letters = []
    for label, e in reversed(parse_word(word)):
        key = label if e > 0 else label + "^-1"
        if key not in table:
            raise InputError(f"no action recorded for {label!r}")
        letters.extend([key] * abs(e))
    for v in vertices:
        x = int(v)
        for key in letters:
            if x < 0:
                break
            x = int(table[key][x])
        out.append(x)
    return out


def window_relation_holds(ball: CubeBall, word) -> bool:
    """The relator fixes every window vertex on which it is fully defined."""
    ids = np.arange(ball.n)
    img = np.array(act(ball, word, ids))
    defined = img >= 0
    return bool((img[defined] == ids[defined]).all()) and bool(defined.any())


def _word_table(ball, word):
    img = np.array(act(ball, word, range(ball.n)), dtype=np.int64)
    inv = np.full(ball.n, -1, dtype=np.int64)
    ok = img >= 0
    inv[img[ok]] = np.flatnonzero(ok)
    return [img, inv]


def orbit_closure(ball: CubeBall, seeds, names=None, words=None) -> frozenset:
    """Closure of a vertex set under the recorded partial permutations.

    ``names`` restricts to some generators; ``words`` closes under the
    subgroup generated by the given words instead.
    """
    table = ball.meta["action"]
    if words is not None:
        maps = [m for w in words for m in _word_table(ball, w)]
    else:
        keys = list(table) if names is None else [k for nm in names for k in (nm, nm + "^-1")]
        maps = [table[k] for k in keys]
    S = set(int(s) for s in seeds)
    frontier = list(S)
    while frontier:
        nxt = []
        for v in frontier:
            for m in maps:
                w = int(m[v])
                if w >= 0 and w not in S:
                    S.add(w)
                    nxt.append(w)
        frontier = nxt
    return frozenset(S)


def lex_geodesic(ball: CubeBall, x, y) -> list:
    """The geodesic x → y that always steps to the smallest-id vertex closer to y."""
    x, y = int(x), int(y)
    dy = ball.distances(y)
    path = [x]
    while path[-1] != y:
        v = path[-1]
        path.append(min(w for w in ball.neighbors(v) if dy[w] == dy[v] - 1))
    return path


def path_orbit(ball: CubeBall, generator_words, names=None, base=None,
               cyclic=False) -> frozenset:
    """Orbit of the lex geodesics base → g·base, one per word g.

    With ``names`` the orbit is taken under those generators only; with
    ``cyclic`` under the subgroup generated by the words themselves.
    """
    base = ball.base if base is None else int(base)
    seeds = {base}
    for w in generator_words:
        (tgt,) = act(ball, w, [base])
        if tgt < 0:
            raise InputError(f"{w} moves the base out of the window")
        seeds.update(lex_geodesic(ball, base, tgt))
    if cyclic:
        return orbit_closure(ball, seeds, words=generator_words)
    return orbit_closure(ball, seeds, names)


# --------------------------------------------------------------------------
# trees and products

def tree_window(degree: int, radius: int) -> CubeBall:
    """Ball in the regular tree of the given degree."""
    if degree < 1:
        raise InputError("degree must be positive")
    labels = [""]
    edges = []
    frontier = [(0, None)]
    for _ in range(radius):
        nxt = []
        for v, back in frontier:
            for k in range(degree):
                if k == back:
                    continue
                w = len(labels)
                labels.append(labels[v] + str(k))
                edges.append((v, w, str(k)))
                nxt.append((w, k))
        frontier = nxt
    labels = [l or "o" for l in labels]
    return CubeBall(labels, edges, base=0, radius=radius, median_host=True, exact=True,
                    kind=f"tree:{degree}")


def product_window(*balls: CubeBall) -> CubeBall:
    """Cartesian product of windows; base and radius add up."""
    if not balls:
        raise InputError("product of nothing")
    sizes = [b.n for b in balls]
    coords = list(itertools.product(*[range(s) for s in sizes]))
    strides = [int(np.prod(sizes[i + 1:])) for i in range(len(sizes))]
    edges = []
    for f, b in enumerate(balls):
        for a, c, lab in b.edges():
            for idx, co in enumerate(coords):
                if co[f] == a:
                    edges.append((idx, idx + (c - a) * strides[f], f"{f}:{lab}"))
    base = sum(b.base * s for b, s in zip(balls, strides))
    labels = ["×".join(b.labels[i] for b, i in zip(balls, co)) for co in coords]
    return CubeBall(labels, edges, base=base, radius=sum(b.radius for b in balls),
                    payload=coords,
                    median_host=all(b.median_host for b in balls),
                    exact=all(b.exact for b in balls),
                    kind="product(" + ",".join(b.kind for b in balls) + ")")
