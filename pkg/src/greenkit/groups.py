"""Finite permutation groups, their subgroups, cosets and double cosets.

Elements are stored once as permutation tuples (``p[i]`` is the image of
``i``) in lexicographic order; everything else works with their integer
positions in that list.  Composition is ``(p*q)(i) = p[q[i]]`` (apply ``q``
first), so the identity is always element 0.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError, ResourceError

Perm = tuple[int, ...]

DEFAULT_SUBGROUP_BOUND = 48


def compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[i] for i in q)


def perm_inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse cycle notation such as ``(0 1)(2 3)``; ``()`` is the identity."""
    text = text.strip()
    if not re.fullmatch(r"(\(\s*(\d+(\s*,?\s*\d+)*)?\s*\)\s*)+", text):
        raise InputError(f"malformed cycle notation {text!r}")
    img = list(range(degree))
    seen: set[int] = set()
    for body in re.findall(r"\(([^)]*)\)", text):
        pts = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
        for a in pts:
            if a >= degree:
                raise InputError(f"point {a} out of range for degree {degree}")
            if a in seen:
                raise InputError(f"point {a} repeated in {text!r}")
            seen.add(a)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    return tuple(img)


def format_cycles(p: Perm) -> str:
    seen = set()
    parts = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        j = p[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def _check_perm(p: Sequence[int], degree: int) -> Perm:
    p = tuple(int(x) for x in p)
    if len(p) != degree or sorted(p) != list(range(degree)):
        raise InputError(f"{p} is not a permutation of {{0..{degree - 1}}}")
    return p


class Group:
    """A permutation group with enumerated, canonically ordered elements."""

    def __init__(self, degree: int, generators: Iterable[Sequence[int]], name: str | None = None,
                 max_order: int | None = None):
        if degree < 1:
            raise InputError("degree must be positive")
        gens = [_check_perm(g, degree) for g in generators]
        ident = tuple(range(degree))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = compose(s, x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                        if max_order is not None and len(seen) > max_order:
                            raise ResourceError(f"group order exceeds {max_order}")
            frontier = nxt
        self.degree = degree
        self.elements: list[Perm] = sorted(seen)
        self.position = {p: k for k, p in enumerate(self.elements)}
        self.generator_perms = gens
        self.generators: list[int] = [self.position[g] for g in gens]
        self.name = name or f"G{len(self.elements)}"

    def __repr__(self) -> str:
        return f"Group({self.name}, order={self.order})"

    @property
    def order(self) -> int:
        return len(self.elements)

    identity = 0

    @cached_property
    def table(self) -> np.ndarray:
        """``table[a, b]`` is the position of ``elements[a] * elements[b]``."""
        n = self.order
        t = np.empty((n, n), dtype=np.int64)
        pos = self.position
        for a, p in enumerate(self.elements):
            t[a] = [pos[compose(p, q)] for q in self.elements]
        return t

    @cached_property
    def inverses(self) -> np.ndarray:
        return np.array([self.position[perm_inverse(p)] for p in self.elements], dtype=np.int64)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return int(self.table[self.table[g, x], self.inverses[g]])

    def prod(self, *xs: int) -> int:
        out = 0
        for x in xs:
            out = int(self.table[out, x])
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    @cached_property
    def words(self) -> list[tuple[int, ...]]:
        """A shortest word in the generators (indices into ``generators``) for each element."""
        words: list[tuple[int, ...] | None] = [None] * self.order
        words[0] = ()
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for k, s in enumerate(self.generators):
                    y = self.mul(s, x)
                    if words[y] is None:
                        words[y] = (k,) + words[x]
                        nxt.append(y)
            frontier = nxt
        return words  # type: ignore[return-value]

    # subgroups
    def subgroup(self, elements: Iterable[int]) -> "Subgroup":
        els = frozenset(int(e) for e in elements)
        if 0 not in els or any(self.mul(a, b) not in els for a in els for b in els):
            raise InputError("element set is not a subgroup")
        return Subgroup(self, tuple(sorted(els)))

    def generated(self, gens: Iterable[int]) -> "Subgroup":
        return Subgroup(self, tuple(sorted(self._closure(gens))))

    def _closure(self, gens: Iterable[int]) -> set[int]:
        gens = [g for g in gens if g != 0]
        seen = {0}
        frontier = [0]
        t = self.table
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = int(t[s, x])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, (0,))

    def subgroups(self, bound: int = DEFAULT_SUBGROUP_BOUND) -> list["Subgroup"]:
        """All subgroups, by closing cyclic subgroups under joins."""
        if self.order > bound:
            raise ResourceError(f"|G| = {self.order} exceeds the subgroup bound {bound}")
        cyclic = {frozenset(self._closure([g])) for g in range(self.order)}
        found = set(cyclic)
        frontier = list(cyclic)
        while frontier:
            nxt = []
            for s in frontier:
                for c in cyclic:
                    if c <= s:
                        continue
                    j = frozenset(self._closure(list(s | c)))
                    if j not in found:
                        found.add(j)
                        nxt.append(j)
            frontier = nxt
        subs = [Subgroup(self, tuple(sorted(s))) for s in found]
        subs.sort(key=lambda h: (h.order, h.elements))
        return subs

    def subgroup_classes(self, bound: int = DEFAULT_SUBGROUP_BOUND) -> list["SubgroupClass"]:
        subs = self.subgroups(bound)
        assigned: dict[tuple[int, ...], int] = {}
        classes: list[list[Subgroup]] = []
        for h in subs:
            if h.elements in assigned:
                continue
            members = sorted({h.conjugate(g).elements for g in range(self.order)})
            for m in members:
                assigned[m] = len(classes)
            classes.append([Subgroup(self, m) for m in members])
        out = [SubgroupClass(self, tuple(c)) for c in classes]
        out.sort(key=lambda c: (c.representative.order, c.representative.elements))
        return out

    @cached_property
    def lattice(self) -> list["Subgroup"]:
        """All subgroups (cached, no size bound), sorted by order then elements."""
        return self.subgroups(bound=max(DEFAULT_SUBGROUP_BOUND, self.order))

    @cached_property
    def classes(self) -> list["SubgroupClass"]:
        return self.subgroup_classes(bound=max(DEFAULT_SUBGROUP_BOUND, self.order))

    def class_index(self, h: "Subgroup") -> int:
        for k, c in enumerate(self.classes):
            if h.elements in c.member_set:
                return k
        raise InputError("subgroup not found")  # pragma: no cover

    def double_cosets(self, h: "Subgroup", k: "Subgroup") -> list["DoubleCoset"]:
        """Partition of G into double cosets ``H g K`` with least representatives."""
        self._own(h)
        self._own(k)
        seen = np.zeros(self.order, dtype=bool)
        out = []
        t = self.table
        for g in range(self.order):
            if seen[g]:
                continue
            hg = t[list(h.elements), g]
            cells = np.unique(t[hg][:, list(k.elements)])
            seen[cells] = True
            inter = h.intersect(k.conjugate(g))
            out.append(DoubleCoset(g, h, k, inter, int(cells.size)))
        return out

    def double_cosets_in(self, k: "Subgroup", l: "Subgroup", h: "Subgroup") -> list["DoubleCoset"]:
        """Double cosets ``L x H`` inside ``K`` for ``L, H <= K``."""
        if not (l.is_subgroup_of(k) and h.is_subgroup_of(k)):
            raise InputError("double cosets need subgroups of the ambient subgroup")
        seen: set[int] = set()
        out = []
        t = self.table
        for x in k.elements:
            if x in seen:
                continue
            cells = set(np.unique(t[t[list(l.elements), x]][:, list(h.elements)]).tolist())
            seen |= cells
            out.append(DoubleCoset(x, l, h, l.intersect(h.conjugate(x)), len(cells)))
        return out

    def left_cosets(self, h: "Subgroup") -> "LeftCosets":
        self._own(h)
        return LeftCosets(self, h)

    def _own(self, h: "Subgroup"):
        if h.group is not self:
            raise InputError("subgroup belongs to a different group")

    def direct_product(self, other: "Group") -> "Group":
        d1, d2 = self.degree, other.degree
        gens = [tuple(g) + tuple(range(d1, d1 + d2)) for g in self.generator_perms]
        gens += [tuple(range(d1)) + tuple(d1 + x for x in g) for g in other.generator_perms]
        return Group(d1 + d2, gens, name=f"{self.name}x{other.name}")

    def pair_index(self, other: "Group", product: "Group", a: int, b: int) -> int:
        """Position in ``product`` (from :meth:`direct_product`) of the pair (a, b)."""
        return product.position[self.elements[a] + tuple(self.degree + x for x in other.elements[b])]

    def to_text(self) -> str:
        lines = [f"degree {self.degree}"]
        lines += [format_cycles(g) for g in self.generator_perms]
        return "\n".join(lines) + "\n"


def group_from_generators(degree: int, gens: Iterable[Sequence[int]], name: str | None = None) -> Group:
    return Group(degree, gens, name)


def parse_group_text(text: str, name: str | None = None, max_order: int | None = None) -> Group:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise InputError("empty group file")
    m = re.fullmatch(r"degree\s+(\d+)", lines[0])
    if not m:
        raise InputError("group file must start with 'degree N'")
    degree = int(m.group(1))
    if degree < 1:
        raise InputError("degree must be positive")
    gens = [parse_cycles(ln, degree) for ln in lines[1:]]
    return Group(degree, gens, name, max_order=max_order)


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup given by the sorted positions of its elements in the parent."""

    group: Group
    elements: tuple[int, ...]

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and other.group is self.group and other.elements == self.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, gens={[format_cycles(self.group.elements[g]) for g in self.generators]})"

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def members(self) -> frozenset[int]:
        return frozenset(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self.members

    def index_in(self, bigger: "Subgroup | None" = None) -> int:
        n = self.group.order if bigger is None else bigger.order
        return n // self.order

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    def conjugate(self, g: int) -> "Subgroup":
        """``g H g^-1``."""
        G = self.group
        return Subgroup(G, tuple(sorted(G.conj(g, x) for x in self.elements)))

    def intersect(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.group, tuple(sorted(self.members & other.members)))

    @cached_property
    def generators(self) -> list[int]:
        gens: list[int] = []
        span = {0}
        for x in self.elements:
            if x not in span:
                gens.append(x)
                span = self.group._closure(gens)
        return gens

    @cached_property
    def as_group(self) -> Group:
        """The subgroup as a group in its own right (same canonical order)."""
        G = self.group
        H = Group(G.degree, [G.elements[g] for g in self.generators])
        assert len(H.elements) == self.order
        return H

    def local(self, g: int) -> int:
        """Position inside :attr:`as_group` of the parent element ``g``."""
        return self._local[g]

    @cached_property
    def _local(self) -> dict[int, int]:
        return {g: k for k, g in enumerate(self.elements)}

    def sub(self, elements: Iterable[int]) -> "Subgroup":
        """A subgroup of :attr:`as_group` given by parent positions."""
        return self.as_group.subgroup(self.local(g) for g in elements)


@dataclass(frozen=True, eq=False)
class SubgroupClass:
    group: Group
    conjugates: tuple[Subgroup, ...]

    @property
    def representative(self) -> Subgroup:
        return self.conjugates[0]

    @cached_property
    def member_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(h.elements for h in self.conjugates)

    def __len__(self) -> int:
        return len(self.conjugates)


@dataclass(frozen=True)
class DoubleCoset:
    representative: int
    left: Subgroup
    right: Subgroup
    intersection: Subgroup
    size: int


class LeftCosets:
    """Left cosets ``g_j H`` with least representatives, ``g_1 = e``.

    ``coset[g]`` is ``j`` with ``g`` in ``g_j H`` and ``hpart[g]`` the element
    ``h = g_j^-1 g`` of H (as a parent position).
    """

    def __init__(self, G: Group, H: Subgroup):
        self.group = G
        self.subgroup = H
        coset = np.full(G.order, -1, dtype=np.int64)
        reps: list[int] = []
        t = G.table
        hel = list(H.elements)
        for g in range(G.order):
            if coset[g] < 0:
                coset[t[g, hel]] = len(reps)
                reps.append(g)
        self.reps = reps
        self.coset = coset
        inv = G.inverses
        self.hpart = np.array([t[inv[reps[coset[g]]], g] for g in range(G.order)], dtype=np.int64)

    def __len__(self) -> int:
        return len(self.reps)

    def act(self, g: int, j: int) -> tuple[int, int]:
        """``g g_j = g_k h``: returns ``(k, h)``."""
        x = self.group.mul(g, self.reps[j])
        return int(self.coset[x]), int(self.hpart[x])

    @cached_property
    def permutation_table(self) -> np.ndarray:
        """``perm[g, j] = k`` with ``g g_j H = g_k H``."""
        G = self.group
        return self.coset[G.table[:, self.reps]]
