"""Ordinary Mackey and Green functors for a fixed finite group.

A functor is tabulated on every subgroup: a value rank, restriction and
induction matrices for each inclusion, and a conjugation matrix for each
(element, subgroup) pair.  Matrices act on column vectors of coordinates, so
``res[K, H]`` has shape ``rank(H) x rank(K)``.

Values on arbitrary finite G-sets come from :func:`extend_to_gset`, which sums
over orbits.  Pairings are stored as ``rank x rank^2`` matrices acting on
Kronecker products of coordinate vectors.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np

from .errors import InputError
from .exactla import Field, Matrix, hstack, vstack
from .groups import Group, Subgroup
from .gsets import GMap, GSet, diagonal_map, disjoint_union, product, projection_maps, pullback, transitive_gset
from .report import Report

ANCHOR_FUNCT = "Mackey functor: functoriality"
ANCHOR_ISO = "Mackey functor: isomorphism invariance"
ANCHOR_ADD = "Mackey functor: additivity"
ANCHOR_MACKEY = "Mackey functor: double coset formula"
ANCHOR_GREEN = "Green functor: associative unital algebras with multiplicative restriction"
ANCHOR_FROBENIUS = "Green functor: Frobenius (projection) formulas"
ANCHOR_EXTERNAL = "internal and external pairings correspond"


class MackeyFunctor:
    def __init__(self, group: Group, field: Field, ranks: dict[Subgroup, int],
                 res: dict[tuple[int, int], Matrix], ind: dict[tuple[int, int], Matrix],
                 conj: dict[tuple[int, int], Matrix], ring: str | None = None, name: str = "",
                 degrees: dict[Subgroup, list[int]] | None = None):
        self.group = group
        self.field = field
        self.subgroups: list[Subgroup] = list(group.lattice)
        self._index = {h.elements: k for k, h in enumerate(self.subgroups)}
        self.ranks = [ranks[h] for h in self.subgroups]
        self.res_table = res
        self.ind_table = ind
        self.conj_table = conj
        self.ring = ring or field.tag
        self.name = name
        self.degrees = degrees

    @classmethod
    def build(cls, group: Group, field: Field, rank: Callable[[Subgroup], int],
              res: Callable[[Subgroup, Subgroup], Matrix], ind: Callable[[Subgroup, Subgroup], Matrix],
              conj: Callable[[int, Subgroup], Matrix], ring: str | None = None, name: str = "",
              degrees: Callable[[Subgroup], list[int]] | None = None) -> "MackeyFunctor":
        subs = group.lattice
        idx = {h.elements: k for k, h in enumerate(subs)}
        ranks = {h: rank(h) for h in subs}
        rt, it, ct = {}, {}, {}
        for K in subs:
            for H in subs:
                if H.is_subgroup_of(K):
                    rt[(idx[K.elements], idx[H.elements])] = res(K, H)
                    it[(idx[H.elements], idx[K.elements])] = ind(H, K)
        for H in subs:
            for g in range(group.order):
                ct[(g, idx[H.elements])] = conj(g, H)
        deg = {h: degrees(h) for h in subs} if degrees else None
        return cls(group, field, ranks, rt, it, ct, ring, name, deg)

    def idx(self, h: Subgroup) -> int:
        try:
            return self._index[h.elements]
        except KeyError:
            raise InputError("not a subgroup of this functor's group") from None

    def rank(self, h: Subgroup) -> int:
        return self.ranks[self.idx(h)]

    def res(self, K: Subgroup, H: Subgroup) -> Matrix:
        m = self.res_table.get((self.idx(K), self.idx(H)))
        if m is None:
            raise InputError("restriction requested for a non-inclusion or missing from the table")
        return m

    def ind(self, H: Subgroup, K: Subgroup) -> Matrix:
        m = self.ind_table.get((self.idx(H), self.idx(K)))
        if m is None:
            raise InputError("induction requested for a non-inclusion or missing from the table")
        return m

    def conj(self, g: int, H: Subgroup) -> Matrix:
        m = self.conj_table.get((g, self.idx(H)))
        if m is None:
            raise InputError("conjugation missing from the table")
        return m

    def identity(self, H: Subgroup) -> Matrix:
        return Matrix.identity(self.rank(H), self.field)

    def copy_with(self, **tables) -> "MackeyFunctor":
        out = MackeyFunctor.__new__(MackeyFunctor)
        out.__dict__.update(self.__dict__)
        for k, v in tables.items():
            setattr(out, k, v)
        return out

    def label(self, h: Subgroup) -> str:
        c = self.group.class_index(h)
        members = [m.elements for m in self.group.classes[c].conjugates]
        return f"{c}.{members.index(h.elements)}"

    def to_dict(self) -> dict:
        """Interchange form keyed by subgroup labels ``class.member``."""
        G = self.group
        lab = [self.label(h) for h in self.subgroups]
        levels = {}
        for k, h in enumerate(self.subgroups):
            lev = {"order": h.order, "rank": self.ranks[k], "elements": list(h.elements)}
            if self.degrees is not None:
                lev["degrees"] = self.degrees[h]
            levels[lab[k]] = lev
        return {
            "group": G.name, "ring": self.ring, "field": self.field.tag, "name": self.name,
            "levels": levels,
            "res": {f"{lab[a]}>{lab[b]}": m.to_strings() for (a, b), m in sorted(self.res_table.items())},
            "ind": {f"{lab[a]}<{lab[b]}": m.to_strings() for (a, b), m in sorted(self.ind_table.items())},
            "conj": {f"{g}:{lab[b]}": m.to_strings() for (g, b), m in sorted(self.conj_table.items())
                     if g in G.generators or g == 0},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)


# -- values on G-sets ----------------------------------------------------------

@dataclass
class GSetValue:
    """``M(X) = (+)_orbits M(Stab(x_O))`` with ``x_O`` the least point of each orbit."""

    functor: MackeyFunctor
    gset: GSet
    reps: list[int]
    stabilizers: list[Subgroup]
    offsets: list[int]
    rank: int

    def block(self, k: int) -> slice:
        return slice(self.offsets[k], self.offsets[k] + self.functor.rank(self.stabilizers[k]))


def extend_to_gset(M: MackeyFunctor, X: GSet) -> GSetValue:
    reps = [orb[0] for orb in X.orbits]
    stabs = [X.stabilizer(x) for x in reps]
    offsets, total = [], 0
    for s in stabs:
        offsets.append(total)
        total += M.rank(s)
    return GSetValue(M, X, reps, stabs, offsets, total)


def _transport(f: GMap, vx: GSetValue, vy: GSetValue, k: int) -> tuple[int, int]:
    """For orbit ``k`` of X: the orbit ``l`` of Y containing ``f(x_k)`` and ``t`` with ``t.y_l = f(x_k)``."""
    Y = f.target
    fx = int(f.table[vx.reps[k]])
    l = int(Y.orbit_of[fx])
    return l, Y.transporter(vy.reps[l], fx)


def _assemble(rows: int, cols: int, blocks: list[tuple[slice, slice, Matrix]], field: Field) -> Matrix:
    den = 1
    for _, _, b in blocks:
        den = den * b.den // math.gcd(den, b.den)
    obj = any(b.num.dtype == object for _, _, b in blocks)
    arr = np.zeros((rows, cols), dtype=object if obj else np.int64)
    for rs, cs, b in blocks:
        arr[rs, cs] = arr[rs, cs] + b.num * (den // b.den)
    return Matrix(arr, den, field)


def res_along(M: MackeyFunctor, f: GMap, vx: GSetValue | None = None, vy: GSetValue | None = None) -> Matrix:
    """``f^*: M(Y) -> M(X)`` for an equivariant ``f: X -> Y``."""
    vx = vx or extend_to_gset(M, f.source)
    vy = vy or extend_to_gset(M, f.target)
    blocks = []
    for k, Sx in enumerate(vx.stabilizers):
        l, t = _transport(f, vx, vy, k)
        Sy = vy.stabilizers[l]
        tSy = Sy.conjugate(t)
        blocks.append((vx.block(k), vy.block(l), M.res(tSy, Sx) @ M.conj(t, Sy)))
    return _assemble(vx.rank, vy.rank, blocks, M.field)


def ind_along(M: MackeyFunctor, f: GMap, vx: GSetValue | None = None, vy: GSetValue | None = None) -> Matrix:
    """``f_*: M(X) -> M(Y)`` for an equivariant ``f: X -> Y``."""
    vx = vx or extend_to_gset(M, f.source)
    vy = vy or extend_to_gset(M, f.target)
    G = M.group
    blocks = []
    for k, Sx in enumerate(vx.stabilizers):
        l, t = _transport(f, vx, vy, k)
        tSy = vy.stabilizers[l].conjugate(t)
        blocks.append((vy.block(l), vx.block(k), M.conj(G.inv(t), tSy) @ M.ind(Sx, tSy)))
    return _assemble(vy.rank, vx.rank, blocks, M.field)


def coset_projection(G: Group, H: Subgroup, K: Subgroup) -> GMap:
    """``G/H -> G/K, gH |-> gK`` for ``H <= K``."""
    X, Y = transitive_gset(G, H), transitive_gset(G, K)
    lh, lk = G.left_cosets(H), G.left_cosets(K)
    return GMap(X, Y, [int(lk.coset[r]) for r in lh.reps])


# -- axiom checks ----------------------------------------------------------------

def check_mackey_axioms(M: MackeyFunctor, report: Report | None = None, tag: str = "",
                        gset_squares: bool = True) -> Report:
    rep = report or Report("mackey-axioms", M.group.name, M.field.tag)
    G = M.group
    subs = M.subgroups
    for K in subs:
        k = M.idx(K)
        if (k, k) not in M.res_table or (k, k) not in M.ind_table:
            raise InputError("incomplete map tables")
    # functoriality
    for K in subs:
        rep.equal(f"{tag}res id {M.label(K)}", ANCHOR_FUNCT, M.res(K, K), M.identity(K))
        rep.equal(f"{tag}ind id {M.label(K)}", ANCHOR_FUNCT, M.ind(K, K), M.identity(K))
        rep.equal(f"{tag}conj id {M.label(K)}", ANCHOR_FUNCT, M.conj(0, K), M.identity(K))
    for L in subs:
        for K in subs:
            if not K.is_subgroup_of(L):
                continue
            for H in subs:
                if not H.is_subgroup_of(K):
                    continue
                w = f"{M.label(H)}<{M.label(K)}<{M.label(L)}"
                rep.equal(f"{tag}res transitive {w}", ANCHOR_FUNCT, M.res(K, H) @ M.res(L, K), M.res(L, H))
                rep.equal(f"{tag}ind transitive {w}", ANCHOR_FUNCT, M.ind(K, L) @ M.ind(H, K), M.ind(H, L))
    gens = G.generators
    for H in subs:
        for g in range(G.order):
            gH = H.conjugate(g)
            for s in gens:
                rep.equal(f"{tag}conj composite {s}*{g} on {M.label(H)}", ANCHOR_FUNCT,
                          M.conj(s, gH) @ M.conj(g, H), M.conj(G.mul(s, g), H))
    for K in subs:
        for H in subs:
            if not H.is_subgroup_of(K) or H == K:
                continue
            for g in gens:
                w = f"{g}:{M.label(H)}<{M.label(K)}"
                gK, gH = K.conjugate(g), H.conjugate(g)
                rep.equal(f"{tag}conj/res {w}", ANCHOR_FUNCT, M.conj(g, H) @ M.res(K, H),
                          M.res(gK, gH) @ M.conj(g, K))
                rep.equal(f"{tag}conj/ind {w}", ANCHOR_FUNCT, M.conj(g, K) @ M.ind(H, K),
                          M.ind(gH, gK) @ M.conj(g, H))
    # isomorphism invariance: inner conjugations are identities
    for H in subs:
        for h in H.elements:
            rep.equal(f"{tag}inner conj {h} on {M.label(H)}", ANCHOR_ISO, M.conj(h, H), M.identity(H))
    # Mackey double coset formula for L, H <= K
    for K in subs:
        for L in subs:
            if not L.is_subgroup_of(K):
                continue
            for H in subs:
                if not H.is_subgroup_of(K):
                    continue
                lhs = M.res(K, L) @ M.ind(H, K)
                rhs = Matrix.zeros(M.rank(L), M.rank(H), M.field)
                for dc in G.double_cosets_in(K, L, H):
                    x = dc.representative
                    LxH = dc.intersection  # L cap xHx^-1
                    H1 = H.intersect(L.conjugate(G.inv(x)))  # H cap x^-1 L x
                    rhs = rhs + M.ind(LxH, L) @ M.conj(x, H1) @ M.res(H, H1)
                rep.equal(f"{tag}double coset {M.label(L)},{M.label(H)}<{M.label(K)}", ANCHOR_MACKEY,
                          lhs, rhs)
    # additivity and the G-set form of the Mackey formula
    classes = [c.representative for c in G.classes]
    for a, H in enumerate(classes):
        for K in classes[a:]:
            X, Y = transitive_gset(G, H), transitive_gset(G, K)
            _check_additivity(M, X, Y, rep, f"{tag}additivity {M.label(H)}+{M.label(K)}")
    if gset_squares:
        for K in classes:
            for H in subs:
                if not H.is_subgroup_of(K):
                    continue
                for L in subs:
                    if not L.is_subgroup_of(K):
                        continue
                    f, g = coset_projection(G, H, K), coset_projection(G, L, K)
                    sq = pullback(f, g)
                    lhs = res_along(M, g) @ ind_along(M, f)
                    rhs = ind_along(M, sq.q) @ res_along(M, sq.p)
                    rep.equal(f"{tag}square {M.label(H)},{M.label(L)}->{M.label(K)}", ANCHOR_MACKEY, lhs, rhs)
    return rep


def _check_additivity(M: MackeyFunctor, X: GSet, Y: GSet, rep: Report, cid: str):
    XY = disjoint_union(X, Y)
    ix = GMap(X, XY, np.arange(X.size), check=False)
    iy = GMap(Y, XY, np.arange(X.size, X.size + Y.size), check=False)
    vxy = extend_to_gset(M, XY)
    split = vstack([res_along(M, ix), res_along(M, iy)])
    rx, ry = extend_to_gset(M, X).rank, extend_to_gset(M, Y).rank
    ok = split.shape == (rx + ry, vxy.rank) and split.is_invertible()
    if ok:
        # induction along the inclusions is the inverse splitting
        join = hstack([ind_along(M, ix), ind_along(M, iy)])
        ok = (split @ join).is_identity()
    rep.check(cid, ANCHOR_ADD, ok, None if ok else {"ranks": [rx, ry, vxy.rank]})


# -- pairings ----------------------------------------------------------------------

@dataclass
class DressPairing:
    """``beta[H]: M(H) (x) N(H) -> L(H)``, a ``rank_L x rank_M*rank_N`` matrix per subgroup."""

    left: MackeyFunctor
    right: MackeyFunctor
    target: MackeyFunctor
    beta: dict[int, Matrix]
    unit: dict[int, Matrix] | None = None  # column vectors, for Green functors

    def at(self, H: Subgroup) -> Matrix:
        return self.beta[self.left.idx(H)]

    def unit_at(self, H: Subgroup) -> Matrix:
        assert self.unit is not None
        return self.unit[self.left.idx(H)]


def make_pairing(M: MackeyFunctor, N: MackeyFunctor, L: MackeyFunctor,
                 beta: Callable[[Subgroup], Matrix], unit: Callable[[Subgroup], Matrix] | None = None) -> DressPairing:
    if len({M.ring, N.ring, L.ring}) != 1:
        raise InputError("pairing between functors over different base rings")
    b = {M.idx(h): beta(h) for h in M.subgroups}
    u = {M.idx(h): unit(h) for h in M.subgroups} if unit else None
    return DressPairing(M, N, L, b, u)


def check_dress_pairing(P: DressPairing, report: Report | None = None, tag: str = "") -> Report:
    M, N, L = P.left, P.right, P.target
    G = M.group
    rep = report or Report("dress-pairing", G.name, M.field.tag)
    for K in M.subgroups:
        bK = P.at(K)
        for H in M.subgroups:
            if not H.is_subgroup_of(K) or H == K:
                continue
            w = f"{M.label(H)}<{M.label(K)}"
            bH = P.at(H)
            rep.equal(f"{tag}res multiplicative {w}", ANCHOR_GREEN,
                      L.res(K, H) @ bK, bH @ M.res(K, H).kron(N.res(K, H)))
            rep.equal(f"{tag}frobenius right {w}", ANCHOR_FROBENIUS,
                      bK @ M.identity(K).kron(N.ind(H, K)), L.ind(H, K) @ bH @ M.res(K, H).kron(N.identity(H)))
            rep.equal(f"{tag}frobenius left {w}", ANCHOR_FROBENIUS,
                      bK @ M.ind(H, K).kron(N.identity(K)), L.ind(H, K) @ bH @ M.identity(H).kron(N.res(K, H)))
        for g in G.generators:
            gK = K.conjugate(g)
            rep.equal(f"{tag}conj multiplicative {g}:{M.label(K)}", ANCHOR_GREEN,
                      L.conj(g, K) @ bK, P.at(gK) @ M.conj(g, K).kron(N.conj(g, K)))
    return rep


def check_green_axioms(M: MackeyFunctor, P: DressPairing, report: Report | None = None, tag: str = "") -> Report:
    G = M.group
    rep = report or Report("green-axioms", G.name, M.field.tag)
    if P.unit is None:
        raise InputError("a Green functor needs unit elements")
    for H in M.subgroups:
        b = P.at(H)
        I = M.identity(H)
        u = P.unit_at(H)
        lab = M.label(H)
        rep.equal(f"{tag}associative {lab}", ANCHOR_GREEN, b @ b.kron(I), b @ I.kron(b))
        rep.equal(f"{tag}left unit {lab}", ANCHOR_GREEN, b @ u.kron(I), I)
        rep.equal(f"{tag}right unit {lab}", ANCHOR_GREEN, b @ I.kron(u), I)
        for K in M.subgroups:
            if H.is_subgroup_of(K) and H != K:
                rep.equal(f"{tag}res unit {lab}<{M.label(K)}", ANCHOR_GREEN, M.res(K, H) @ P.unit_at(K), u)
        for g in G.generators:
            rep.equal(f"{tag}conj unit {g}:{lab}", ANCHOR_GREEN, M.conj(g, H) @ u, P.unit_at(H.conjugate(g)))
    check_dress_pairing(P, rep, tag)
    return rep


def module_over_itself(M: MackeyFunctor, P: DressPairing) -> DressPairing:
    """A Green functor acting on itself by multiplication (a Dress pairing M x M -> M)."""
    return DressPairing(M, M, M, dict(P.beta), None)


# -- internal / external pairings ----------------------------------------------------

def pairing_on_gset(P: DressPairing, X: GSet) -> Matrix:
    """``beta_X: M(X) (x) N(X) -> L(X)``, orbitwise."""
    vm, vn, vl = (extend_to_gset(F, X) for F in (P.left, P.right, P.target))
    rows, cols = vl.rank, vm.rank * vn.rank
    F = P.left.field
    arr_blocks = []
    for k, S in enumerate(vm.stabilizers):
        b = P.at(S)
        # scatter columns: (i, j) in orbit block -> global index i*rank_N + j
        mi = range(vm.block(k).start, vm.block(k).stop)
        nj = range(vn.block(k).start, vn.block(k).stop)
        colidx = [i * vn.rank + j for i in mi for j in nj]
        arr_blocks.append((vl.block(k), colidx, b))
    den = 1
    for _, _, b in arr_blocks:
        den = den * b.den // math.gcd(den, b.den)
    obj = any(b.num.dtype == object for _, _, b in arr_blocks)
    arr = np.zeros((rows, cols), dtype=object if obj else np.int64)
    for rs, ci, b in arr_blocks:
        arr[rs, ci] = b.num * (den // b.den)
    return Matrix(arr, den, F)


@dataclass
class ExternalPairing:
    """``beta~_{S,T}: M(S) (x) N(T) -> L(S x T)`` for pairs of transitive G-sets of class representatives."""

    source: DressPairing
    table: dict[tuple[int, int], Matrix] = dc_field(default_factory=dict)

    def at_sets(self, S: GSet, T: GSet) -> Matrix:
        return external_at(self.source, S, T)


def external_at(P: DressPairing, S: GSet, T: GSet) -> Matrix:
    p1, p2, ST = projection_maps(S, T)
    b = pairing_on_gset(P, ST)
    return b @ res_along(P.left, p1).kron(res_along(P.right, p2))


def dress_to_external(P: DressPairing) -> ExternalPairing:
    G = P.left.group
    reps = [c.representative for c in G.classes]
    table = {}
    for a, H in enumerate(reps):
        for b, K in enumerate(reps):
            table[(a, b)] = external_at(P, transitive_gset(G, H), transitive_gset(G, K))
    return ExternalPairing(P, table)


def external_to_dress(E: ExternalPairing) -> dict[int, Matrix]:
    """``beta_H = delta^* beta~_{G/H, G/H}``, transported to every subgroup by conjugation."""
    P = E.source
    M, N, L = P.left, P.right, P.target
    G = M.group
    out: dict[int, Matrix] = {}
    for a, c in enumerate(G.classes):
        H = c.representative
        X = transitive_gset(G, H)
        d = diagonal_map(X)
        bH = res_along(L, d) @ E.table[(a, a)]
        for H2 in c.conjugates:
            g = next(g for g in range(G.order) if H.conjugate(g) == H2)
            gi = G.inv(g)
            out[M.idx(H2)] = L.conj(g, H) @ bH @ M.conj(gi, H2).kron(N.conj(gi, H2))
    return out


def check_external_roundtrip(P: DressPairing, report: Report | None = None, tag: str = "") -> Report:
    M, N, L = P.left, P.right, P.target
    G = M.group
    rep = report or Report("dress-roundtrip", G.name, M.field.tag)
    E = dress_to_external(P)
    back = external_to_dress(E)
    for H in M.subgroups:
        rep.equal(f"{tag}dress->external->dress {M.label(H)}", ANCHOR_EXTERNAL, back[M.idx(H)], P.at(H))
    P2 = DressPairing(M, N, L, back, P.unit)
    E2 = dress_to_external(P2)
    for key, m in E.table.items():
        rep.equal(f"{tag}external->dress->external {key}", ANCHOR_EXTERNAL, E2.table[key], m)
    # naturality of the external pairing in both variables
    reps = [c.representative for c in G.classes]
    for K in reps:
        for H in M.subgroups:
            if not H.is_subgroup_of(K) or H == K:
                continue
            f = coset_projection(G, H, K)
            for T0 in reps:
                T = transitive_gset(G, T0)
                w = f"{M.label(H)}<{M.label(K)};{M.label(T0)}"
                IT = Matrix.identity(extend_to_gset(N, T).rank, M.field)
                IT_m = Matrix.identity(extend_to_gset(M, T).rank, M.field)
                # first variable: (f x T)_* beta~_{S,T} = beta~_{S',T} (f_* x 1)
                fT = _product_map(f, T)
                lhs = ind_along(L, fT) @ external_at(P, f.source, T)
                rhs = external_at(P, f.target, T) @ ind_along(M, f).kron(IT)
                rep.equal(f"{tag}external ind natural left {w}", ANCHOR_EXTERNAL, lhs, rhs)
                lhs = res_along(L, fT) @ external_at(P, f.target, T)
                rhs = external_at(P, f.source, T) @ res_along(M, f).kron(IT)
                rep.equal(f"{tag}external res natural left {w}", ANCHOR_EXTERNAL, lhs, rhs)
                # second variable
                Tf = _product_map_right(T, f)
                lhs = ind_along(L, Tf) @ external_at(P, T, f.source)
                rhs = external_at(P, T, f.target) @ IT_m.kron(ind_along(N, f))
                rep.equal(f"{tag}external ind natural right {w}", ANCHOR_EXTERNAL, lhs, rhs)
    return rep


def _product_map(f: GMap, T: GSet) -> GMap:
    S, S2 = f.source, f.target
    table = (f.table[:, None] * T.size + np.arange(T.size)[None, :]).reshape(-1)
    return GMap(product(S, T), product(S2, T), table, check=False)


def _product_map_right(T: GSet, f: GMap) -> GMap:
    S2 = f.target
    table = (np.arange(T.size)[:, None] * S2.size + f.table[None, :]).reshape(-1)
    return GMap(product(T, f.source), product(T, S2), table, check=False)


def corrupt(M: MackeyFunctor, H: Subgroup, K: Subgroup) -> MackeyFunctor:
    """A copy with one induction matrix perturbed (negative control)."""
    key = (M.idx(H), M.idx(K))
    m = M.ind_table[key]
    bump = np.zeros(m.shape, dtype=np.int64)
    bump[0, 0] = 1
    table = dict(M.ind_table)
    table[key] = m + Matrix(bump, 1, M.field)
    return M.copy_with(ind_table=table)

