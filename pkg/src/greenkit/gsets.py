"""Finite left G-sets, equivariant maps, products and pullbacks."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import InputError
from .groups import Group, Subgroup


class GSet:
    """Points ``0..size-1`` with ``action[g, x]`` the image of ``x`` under element ``g``."""

    def __init__(self, group: Group, action: np.ndarray, check: bool = True):
        action = np.asarray(action, dtype=np.int64)
        if action.ndim != 2 or action.shape[0] != group.order:
            raise InputError("action table must have one row per group element")
        self.group = group
        self.action = action
        self.action.flags.writeable = False
        if check:
            self._validate()

    @property
    def size(self) -> int:
        return self.action.shape[1]

    def __repr__(self) -> str:
        return f"GSet({self.group.name}, size={self.size})"

    def _validate(self):
        G, a, n = self.group, self.action, self.size
        if n and (a.min() < 0 or a.max() >= n):
            raise InputError("action table refers to missing points")
        if not np.array_equal(a[0], np.arange(n)):
            raise InputError("identity does not act trivially")
        for s in G.generators:
            # a[s*g] must equal a[s] o a[g] for all g
            if not np.array_equal(a[G.table[s]], a[s][a]):
                raise InputError("action table is not a group action")

    @classmethod
    def from_generators(cls, group: Group, images: Sequence[Sequence[int]]) -> "GSet":
        """Build the full table from one point permutation per group generator."""
        if len(images) != len(group.generators):
            raise InputError("need one image list per generator")
        n = len(images[0]) if images else 0
        imgs = [np.asarray(im, dtype=np.int64) for im in images]
        for im in imgs:
            if sorted(im.tolist()) != list(range(n)):
                raise InputError("generator image is not a permutation of the points")
        table = np.full((group.order, n), -1, dtype=np.int64)
        table[0] = np.arange(n)
        for g, w in enumerate(group.words):
            row = np.arange(n)
            for k in reversed(w):
                row = imgs[k][row]
            table[g] = row
        return cls(group, table)

    def act(self, g: int, x: int) -> int:
        return int(self.action[g, x])

    @cached_property
    def orbits(self) -> list[list[int]]:
        seen = np.zeros(self.size, dtype=bool)
        out = []
        for x in range(self.size):
            if not seen[x]:
                orb = np.unique(self.action[:, x])
                seen[orb] = True
                out.append(orb.tolist())
        return out

    @cached_property
    def orbit_of(self) -> np.ndarray:
        lab = np.empty(self.size, dtype=np.int64)
        for k, orb in enumerate(self.orbits):
            lab[orb] = k
        return lab

    def stabilizer(self, x: int) -> Subgroup:
        return Subgroup(self.group, tuple(np.flatnonzero(self.action[:, x] == x).tolist()))

    def transporter(self, x: int, y: int) -> int:
        """The least element ``t`` with ``t.x = y``."""
        hits = np.flatnonzero(self.action[:, x] == y)
        if hits.size == 0:
            raise InputError("points lie in different orbits")
        return int(hits[0])

    def decompose(self) -> Counter:
        """Multiset of subgroup-class indices, one per orbit (stabilizer of its least point)."""
        G = self.group
        return Counter(G.class_index(self.stabilizer(orb[0])) for orb in self.orbits)

    def is_transitive(self) -> bool:
        return len(self.orbits) == 1

    def isomorphic(self, other: "GSet") -> bool:
        return self.group is other.group and self.decompose() == other.decompose()

    def fixed_points(self, h: Subgroup) -> list[int]:
        sub = self.action[list(h.elements)]
        return np.flatnonzero(np.all(sub == np.arange(self.size), axis=0)).tolist()

    def identity_map(self) -> "GMap":
        return GMap(self, self, np.arange(self.size))


def transitive_gset(G: Group, H: Subgroup) -> GSet:
    """G/H on left cosets, in the canonical coset order."""
    lc = G.left_cosets(H)
    return GSet(G, lc.permutation_table, check=False)


def empty_gset(G: Group) -> GSet:
    return GSet(G, np.zeros((G.order, 0), dtype=np.int64), check=False)


def point(G: Group) -> GSet:
    return GSet(G, np.zeros((G.order, 1), dtype=np.int64), check=False)


def disjoint_union(x: GSet, y: GSet) -> GSet:
    if x.group is not y.group:
        raise InputError("G-sets over different groups")
    return GSet(x.group, np.hstack([x.action, y.action + x.size]), check=False)


def product(x: GSet, y: GSet) -> GSet:
    """Diagonal action on pairs; pair (a, b) is point ``a * y.size + b``."""
    if x.group is not y.group:
        raise InputError("G-sets over different groups")
    a = x.action[:, :, None] * y.size + y.action[:, None, :]
    return GSet(x.group, a.reshape(x.group.order, -1), check=False)


class GMap:
    """An equivariant map stored as a point table."""

    def __init__(self, source: GSet, target: GSet, table: Sequence[int], check: bool = True):
        self.source = source
        self.target = target
        self.table = np.asarray(table, dtype=np.int64)
        if check:
            if source.group is not target.group:
                raise InputError("map between G-sets of different groups")
            if self.table.shape != (source.size,):
                raise InputError("map table has the wrong length")
            if source.size and (self.table.min() < 0 or self.table.max() >= target.size):
                raise InputError("map table refers to missing points")
            for s in source.group.generators:
                if not np.array_equal(self.table[source.action[s]], target.action[s][self.table]):
                    raise InputError("map is not equivariant")

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def then(self, other: "GMap") -> "GMap":
        return GMap(self.source, other.target, other.table[self.table], check=False)


def projection_maps(x: GSet, y: GSet) -> tuple[GMap, GMap, GSet]:
    xy = product(x, y)
    idx = np.arange(xy.size)
    return GMap(xy, x, idx // y.size, check=False), GMap(xy, y, idx % y.size, check=False), xy


def diagonal_map(x: GSet) -> GMap:
    xx = product(x, x)
    return GMap(x, xx, np.arange(x.size) * (x.size + 1), check=False)


@dataclass(frozen=True)
class PullbackSquare:
    apex: GSet
    p: GMap  # apex -> X
    q: GMap  # apex -> Y
    f: GMap  # X -> Z
    g: GMap  # Y -> Z
    points: tuple[tuple[int, int], ...]
    witness: bool  # f p = g q pointwise; the 2-cell is an equality at this level


def pullback(f: GMap, g: GMap) -> PullbackSquare:
    if f.target is not g.target and not (f.target.group is g.target.group
                                         and np.array_equal(f.target.action, g.target.action)):
        raise InputError("maps have different targets")
    X, Y = f.source, g.source
    pts = [(a, b) for a in range(X.size) for b in range(Y.size) if f.table[a] == g.table[b]]
    index = {pt: k for k, pt in enumerate(pts)}
    G = X.group
    action = np.empty((G.order, len(pts)), dtype=np.int64)
    for k, (a, b) in enumerate(pts):
        for h in range(G.order):
            action[h, k] = index[(int(X.action[h, a]), int(Y.action[h, b]))]
    apex = GSet(G, action, check=False)
    p = GMap(apex, X, [a for a, _ in pts], check=False)
    q = GMap(apex, Y, [b for _, b in pts], check=False)
    witness = bool(np.array_equal(f.table[p.table], g.table[q.table]))
    return PullbackSquare(apex, p, q, f, g, tuple(pts), witness)


def to_point(x: GSet) -> GMap:
    return GMap(x, point(x.group), np.zeros(x.size, dtype=np.int64), check=False)

