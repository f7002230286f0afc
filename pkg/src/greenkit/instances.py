"""Concrete Mackey and Green functors.

* the Burnside ring functor, from double cosets and independently from
  decomposing products of actual G-sets;
* fixed points of a G-algebra, with the relative trace as induction;
* Hom-decategorification of a coherent family of pairs of representations,
  with induction built from the rectified adjunction maps;
* the convolution (and endomorphism) Green functors on such a family.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

from .errors import InputError, InvariantBreach
from .exactla import QQ, CoordinateSystem, Field, Matrix, hstack, vstack
from .frobenius import induced_frobenius
from .groups import Group, Subgroup
from .gsets import product, transitive_gset
from .mackey import DressPairing, MackeyFunctor, make_pairing
from .repcat import Induction, Rep, hom_space, is_intertwiner
from .report import Report


# -- Burnside ring ----------------------------------------------------------------

class LocalClasses:
    """Conjugacy classes of subgroups of ``S`` under conjugation by ``S``."""

    def __init__(self, S: Subgroup):
        G = S.group
        self.level = S
        subs = [T for T in G.lattice if T.is_subgroup_of(S)]
        self.reps: list[Subgroup] = []
        self._index: dict[tuple[int, ...], int] = {}
        for T in subs:
            if T.elements in self._index:
                continue
            k = len(self.reps)
            self.reps.append(T)
            for s in S.elements:
                self._index.setdefault(T.conjugate(s).elements, k)

    def __len__(self) -> int:
        return len(self.reps)

    def index(self, T: Subgroup) -> int:
        try:
            return self._index[T.elements]
        except KeyError:
            raise InputError("not a subgroup of this level") from None


def _local_classes(G: Group) -> dict[tuple[int, ...], LocalClasses]:
    cache = G.__dict__.setdefault("_local_classes_cache", {})
    if not cache:
        for S in G.lattice:
            cache[S.elements] = LocalClasses(S)
    return cache


def _unit_vector(n: int, k: int, field: Field = QQ) -> Matrix:
    a = np.zeros((n, 1), dtype=np.int64)
    a[k, 0] = 1
    return Matrix(a, 1, field)


def _columns(rows: int, cols: list[Counter], field: Field = QQ) -> Matrix:
    a = np.zeros((rows, len(cols)), dtype=np.int64)
    for j, c in enumerate(cols):
        for i, v in c.items():
            a[i, j] += v
    return Matrix(a, 1, field)


def burnside_product(S: Subgroup, T: Subgroup, U: Subgroup, classes: LocalClasses) -> Counter:
    """``[S/T][S/U] = sum over T\\S/U of [S/(T cap xUx^-1)]``."""
    G = S.group
    return Counter(classes.index(d.intersection) for d in G.double_cosets_in(S, T, U))


def burnside_green_functor(G: Group) -> tuple[MackeyFunctor, DressPairing]:
    loc = _local_classes(G)

    def rank(S):
        return len(loc[S.elements])

    def res(K, H):
        lk, lh = loc[K.elements], loc[H.elements]
        cols = [Counter(lh.index(d.intersection) for d in G.double_cosets_in(K, H, T)) for T in lk.reps]
        return _columns(len(lh), cols)

    def ind(H, K):
        lk, lh = loc[K.elements], loc[H.elements]
        return _columns(len(lk), [Counter({lk.index(T): 1}) for T in lh.reps])

    def conj(g, H):
        lh, lg = loc[H.elements], loc[H.conjugate(g).elements]
        return _columns(len(lg), [Counter({lg.index(T.conjugate(g)): 1}) for T in lh.reps])

    M = MackeyFunctor.build(G, QQ, rank, res, ind, conj, ring="Z", name="burnside")

    def beta(S):
        ls = loc[S.elements]
        r = len(ls)
        cols = [burnside_product(S, T, U, ls) for T in ls.reps for U in ls.reps]
        return _columns(r, cols)

    def unit(S):
        ls = loc[S.elements]
        return _unit_vector(len(ls), ls.index(S))

    return M, make_pairing(M, M, M, beta, unit)


@dataclass
class BurnsideRing:
    """Burnside ring of one level: basis = classes of subgroups, product as a ``r x r^2`` matrix."""

    group: Group
    level: Subgroup
    basis: list[Subgroup]
    mult: Matrix

    @property
    def rank(self) -> int:
        return len(self.basis)

    def product(self, a: int, b: int) -> dict[int, int]:
        col = self.mult[:, a * self.rank + b:a * self.rank + b + 1]
        return {i: int(col.entry(i, 0)) for i in range(self.rank) if col.entry(i, 0) != 0}

    @cached_property
    def marks(self) -> Matrix:
        return marks(self.group, self.level)


def k_decat_gsets(G: Group, level: Subgroup | None = None, check: bool = True) -> BurnsideRing:
    """Grothendieck ring of finite ``S``-sets, from decomposing products of transitive sets.

    The level ``S`` defaults to G.  With ``check`` the structure constants are
    compared with the double-coset construction.
    """
    S = level if level is not None else G.whole()
    loc = _local_classes(G)[S.elements]
    GS = S.as_group
    # transitive S-sets as GS-sets; orbit types are translated back to parent subgroups
    sets = [transitive_gset(GS, S.sub(T.elements)) for T in loc.reps]
    r = len(loc)
    cols = []
    for a in range(r):
        for b in range(r):
            XY = product(sets[a], sets[b])
            c: Counter = Counter()
            for orb in XY.orbits:
                stab = XY.stabilizer(orb[0])
                parent = G.subgroup(S.elements[x] for x in stab.elements)
                c[loc.index(parent)] += 1
            cols.append(c)
    ring = BurnsideRing(G, S, list(loc.reps), _columns(r, cols))
    if check:
        other = _columns(r, [burnside_product(S, T, U, loc) for T in loc.reps for U in loc.reps])
        if other != ring.mult:
            raise InvariantBreach(f"Burnside structure constants disagree at level of order {S.order}")
    return ring


def marks(G: Group, level: Subgroup | None = None) -> Matrix:
    """``marks[i, j] = |(S/T_i)^{T_j}|`` over the classes ``T_i`` of subgroups of ``S``."""
    S = level if level is not None else G.whole()
    loc = _local_classes(G)[S.elements]
    GS = S.as_group
    local = [S.sub(T.elements) for T in loc.reps]
    sets = [transitive_gset(GS, T) for T in local]
    r = len(loc)
    a = np.zeros((r, r), dtype=np.int64)
    for i in range(r):
        for j in range(r):
            a[i, j] = len(sets[i].fixed_points(local[j]))
    return Matrix(a, 1, QQ)


# -- fixed points of a G-algebra ------------------------------------------------------

@dataclass
class GAlgebra:
    """An associative unital algebra in G-representations: ``mult: A (x) A -> A``, ``unit: 1 -> A``."""

    carrier: Rep
    mult: Matrix
    unit: Matrix
    name: str = ""

    @property
    def group(self) -> Group:
        return self.carrier.group

    @property
    def field(self) -> Field:
        return self.carrier.field

    def problems(self) -> list[str]:
        A, d = self.carrier, self.carrier.dim
        out = []
        if self.mult.shape != (d, d * d) or self.unit.shape != (d, 1):
            return ["structure maps have the wrong shape"]
        I = A.identity()
        if self.mult @ self.mult.kron(I) != self.mult @ I.kron(self.mult):
            out.append("not associative")
        if self.mult @ self.unit.kron(I) != I or self.mult @ I.kron(self.unit) != I:
            out.append("not unital")
        for g in A.group.generators:
            r = A.element(g)
            if r @ self.mult != self.mult @ r.kron(r):
                out.append(f"generator {g} does not act by algebra maps")
            if r @ self.unit != self.unit:
                out.append(f"generator {g} moves the unit")
        return out

    def validate(self) -> "GAlgebra":
        bad = self.problems()
        if bad:
            raise InputError("not a G-algebra: " + "; ".join(bad))
        return self


def function_algebra(G: Group, H: Subgroup, field: Field = QQ) -> GAlgebra:
    """k[G/H] with pointwise multiplication."""
    A = Rep.permutation(G, H, field)
    d = A.dim
    m = np.zeros((d, d * d), dtype=np.int64)
    for i in range(d):
        m[i, i * d + i] = 1
    return GAlgebra(A, Matrix(m, 1, field), Matrix(np.ones((d, 1), dtype=np.int64), 1, field),
                    f"k[G/{H.order}]")


def conjugation_algebra(G: Group, field: Field = QQ) -> GAlgebra:
    """The group algebra kG, with G acting by conjugation."""
    n = G.order
    t = G.table

    def fn(g):
        return Matrix.permutation([G.conj(g, x) for x in range(n)], field)

    A = Rep(G, n, field, fn, "kG")
    m = np.zeros((n, n * n), dtype=np.int64)
    for x in range(n):
        m[t[x], x * n + np.arange(n)] = 1
    return GAlgebra(A, Matrix(m, 1, field), _unit_vector(n, 0, field), "kG")


def induced_algebra(G: Group, H: Subgroup, field: Field = QQ) -> GAlgebra:
    """A(i) = i_*(1) with its multiplication and unit."""
    F = induced_frobenius(Induction(G, H), field)
    return GAlgebra(F.carrier, F.mu, F.iota, f"A({H.order})")


def _left_coset_reps(K: Subgroup, H: Subgroup) -> list[int]:
    G = K.group
    seen: set[int] = set()
    reps = []
    for k in K.elements:
        if k in seen:
            continue
        reps.append(k)
        seen.update(int(x) for x in G.table[k, list(H.elements)])
    return reps


def fixed_point_basis(A: GAlgebra, H: Subgroup) -> Matrix:
    rho = A.carrier
    I = rho.identity()
    rows = [rho.element(h) - I for h in H.generators]
    if not rows:
        return I
    return vstack(rows).kernel()


def fixed_point_green_functor(A: GAlgebra) -> tuple[MackeyFunctor, DressPairing]:
    A.validate()
    G, F, rho = A.group, A.field, A.carrier
    subs = G.lattice
    basis = {H.elements: fixed_point_basis(A, H) for H in subs}
    coords = {H.elements: CoordinateSystem(basis[H.elements]) for H in subs}

    def rank(H):
        return basis[H.elements].cols

    def res(K, H):
        return coords[H.elements].coords(basis[K.elements])

    def ind(H, K):
        B = basis[H.elements]
        tr = Matrix.zeros(B.rows, B.cols, F)
        for g in _left_coset_reps(K, H):
            tr = tr + rho.element(g) @ B
        return coords[K.elements].coords(tr)

    def conj(g, H):
        return coords[H.conjugate(g).elements].coords(rho.element(g) @ basis[H.elements])

    M = MackeyFunctor.build(G, F, rank, res, ind, conj, name=f"fixed points of {A.name}")

    def beta(H):
        B = basis[H.elements]
        return coords[H.elements].coords(A.mult @ B.kron(B))

    def unit(H):
        return coords[H.elements].coords(A.unit)

    return M, make_pairing(M, M, M, beta, unit)


# -- Hom-decategorification ------------------------------------------------------------

@dataclass
class CoherentPairFamily:
    """Representations ``X_H, Y_H`` of every subgroup with identifications.

    ``lam(K, H): X_H -> res X_K`` and ``rho(K, H): res Y_K -> Y_H`` for
    ``H <= K``; ``sx(g, H): X_H -> X_{gHg^-1}`` and ``sy(g, H)`` likewise
    intertwine ``h`` with ``ghg^-1``.  Optional (co)monoid structure is used by
    the convolution product.
    """

    group: Group
    field: Field
    X: dict[tuple[int, ...], Rep]
    Y: dict[tuple[int, ...], Rep]
    lam: Callable[[Subgroup, Subgroup], Matrix]
    rho: Callable[[Subgroup, Subgroup], Matrix]
    sx: Callable[[int, Subgroup], Matrix]
    sy: Callable[[int, Subgroup], Matrix]
    delta: Callable[[Subgroup], Matrix] | None = None
    counit: Callable[[Subgroup], Matrix] | None = None
    mu: Callable[[Subgroup], Matrix] | None = None
    unit: Callable[[Subgroup], Matrix] | None = None
    name: str = ""

    def x(self, H: Subgroup) -> Rep:
        return self.X[H.elements]

    def y(self, H: Subgroup) -> Rep:
        return self.Y[H.elements]

    @classmethod
    def from_restriction(cls, XG: Rep, YG: Rep, name: str = "", **structure) -> "CoherentPairFamily":
        """The G-local family: restrictions of one pair, identities along inclusions."""
        G = XG.group
        if XG.field != YG.field:
            raise InputError("field mismatch")
        F = XG.field
        X = {H.elements: XG.restrict(H).materialize() for H in G.lattice}
        Y = {H.elements: YG.restrict(H).materialize() for H in G.lattice}

        def lam(K, H):
            return XG.identity()

        def rho(K, H):
            return YG.identity()

        def sx(g, H):
            return XG.element(g)

        def sy(g, H):
            return YG.element(g)

        lifted = {k: (lambda H, m=m: m) for k, m in structure.items() if m is not None}
        return cls(G, F, X, Y, lam, rho, sx, sy, name=name, **lifted)


def family_problems(fam: CoherentPairFamily) -> list[str]:
    """Everything that keeps ``fam`` from being a coherent family (empty if fine)."""
    G = fam.group
    out: list[str] = []
    subs = G.lattice
    for K in subs:
        XK, YK = fam.x(K), fam.y(K)
        if not (XK.field == YK.field == fam.field):
            out.append("field mismatch")
        for H in subs:
            if not H.is_subgroup_of(K):
                continue
            lam, rho = fam.lam(K, H), fam.rho(K, H)
            XH, YH = fam.x(H), fam.y(H)
            if H == K and not (lam.is_identity() and rho.is_identity()):
                out.append(f"identification at {K.order} is not the identity")
            for h in H.generators:
                hl = H.local(h)
                kl = K.local(h)
                if lam @ XH.element(hl) != XK.element(kl) @ lam:
                    out.append(f"lambda({K.order},{H.order}) not equivariant")
                if rho @ YK.element(kl) != YH.element(hl) @ rho:
                    out.append(f"rho({K.order},{H.order}) not equivariant")
            for L in subs:
                if K.is_subgroup_of(L) and L != K and H != K:
                    if fam.lam(L, K) @ lam != fam.lam(L, H):
                        out.append("lambda does not compose")
                    if rho @ fam.rho(L, K) != fam.rho(L, H):
                        out.append("rho does not compose")
            for g in G.generators:
                gK, gH = K.conjugate(g), H.conjugate(g)
                if fam.sx(g, K) @ lam != fam.lam(gK, gH) @ fam.sx(g, H):
                    out.append("conjugation does not commute with lambda")
                if fam.sy(g, H) @ rho != fam.rho(gK, gH) @ fam.sy(g, K):
                    out.append("conjugation does not commute with rho")
        for g in G.generators:
            gK = K.conjugate(g)
            sx, sy = fam.sx(g, K), fam.sy(g, K)
            for k in K.generators:
                gk = G.conj(g, k)
                if sx @ XK.element(K.local(k)) != fam.x(gK).element(gK.local(gk)) @ sx:
                    out.append("conjugation of X not twisted-equivariant")
                if sy @ YK.element(K.local(k)) != fam.y(gK).element(gK.local(gk)) @ sy:
                    out.append("conjugation of Y not twisted-equivariant")
            for g2 in G.generators:
                g2g = G.mul(g2, g)
                if fam.sx(g2, gK) @ sx != fam.sx(g2g, K) or fam.sy(g2, gK) @ sy != fam.sy(g2g, K):
                    out.append("conjugations do not compose")
        for k in K.generators:
            if fam.sx(k, K) != XK.element(K.local(k)) or fam.sy(k, K) != YK.element(K.local(k)):
                out.append("inner conjugation differs from the action")
    return sorted(set(out))


def _vec(m: Matrix) -> Matrix:
    return m.reshape(m.rows * m.cols, 1)


class HomLevels:
    """``Hom_H(X_H, Y_H)`` for every subgroup with a coordinate system."""

    def __init__(self, fam: CoherentPairFamily):
        self.fam = fam
        self.basis: dict[tuple[int, ...], list[Matrix]] = {}
        self.coords: dict[tuple[int, ...], CoordinateSystem] = {}
        for H in fam.group.lattice:
            X, Y = fam.x(H), fam.y(H)
            b = hom_space(X, Y)
            self.basis[H.elements] = b
            flat = hstack([_vec(m) for m in b]) if b else Matrix.zeros(X.dim * Y.dim, 0, fam.field)
            self.coords[H.elements] = CoordinateSystem(flat)

    def rank(self, H: Subgroup) -> int:
        return len(self.basis[H.elements])

    def to_coords(self, H: Subgroup, maps: list[Matrix]) -> Matrix:
        X, Y = self.fam.x(H), self.fam.y(H)
        if not maps:
            return Matrix.zeros(self.rank(H), 0, self.fam.field)
        flat = hstack([_vec(m) for m in maps])
        if flat.rows != X.dim * Y.dim:
            raise InvariantBreach("map of the wrong shape")
        return self.coords[H.elements].coords(flat)


def hom_decat(fam: CoherentPairFamily, check: bool = True) -> tuple[MackeyFunctor, HomLevels]:
    """The Mackey functor ``H -> Hom_H(X_H, Y_H)``.

    Restriction and conjugation transport along the identifications; induction
    along ``H <= K`` is ``eps_l o i_*(rho^-1 psi lam^-1) o eta_r`` for the
    rectified adjunctions of ``H <= K``.
    """
    if check:
        bad = family_problems(fam)
        if bad:
            raise InputError("incoherent family: " + "; ".join(bad))
    G = fam.group
    lv = HomLevels(fam)

    def res(K, H):
        lam, rho = fam.lam(K, H), fam.rho(K, H)
        return lv.to_coords(H, [rho @ phi @ lam for phi in lv.basis[K.elements]])

    def ind(H, K):
        XK, YK = fam.x(K), fam.y(K)
        i = Induction(K.as_group, K.sub(H.elements))
        lam_i, rho_i = fam.lam(K, H).inverse(), fam.rho(K, H).inverse()
        up = i.eta_r(XK)
        down = i.eps_l(YK)
        out = [down @ i.induce_map(rho_i @ psi @ lam_i) @ up for psi in lv.basis[H.elements]]
        return lv.to_coords(K, out)

    def conj(g, H):
        gH = H.conjugate(g)
        sxi, sy = fam.sx(g, H).inverse(), fam.sy(g, H)
        return lv.to_coords(gH, [sy @ phi @ sxi for phi in lv.basis[H.elements]])

    M = MackeyFunctor.build(G, fam.field, lv.rank, res, ind, conj, name=fam.name or "hom")
    return M, lv


def structure_problems(fam: CoherentPairFamily, composition: bool = False) -> list[str]:
    """(Co)monoid laws for the convolution product, and compatibility of the identifications."""
    out: list[str] = []
    G = fam.group
    if composition:
        for H in G.lattice:
            if not fam.x(H).same_as(fam.y(H)):
                out.append("composition product needs X = Y")
        return out
    if None in (fam.delta, fam.counit, fam.mu, fam.unit):
        return ["convolution needs a comonoid X and a monoid Y"]
    for H in G.lattice:
        X, Y = fam.x(H), fam.y(H)
        d, e, m, u = fam.delta(H), fam.counit(H), fam.mu(H), fam.unit(H)
        IX, IY = X.identity(), Y.identity()
        one = Rep.trivial(X.group, fam.field)
        if not (is_intertwiner(d, X, X.tensor(X)) and is_intertwiner(e, X, one)):
            out.append(f"comultiplication at {H.order} not equivariant")
        if not (is_intertwiner(m, Y.tensor(Y), Y) and is_intertwiner(u, one, Y)):
            out.append(f"multiplication at {H.order} not equivariant")
        if d.kron(IX) @ d != IX.kron(d) @ d:
            out.append(f"X_{H.order} not coassociative")
        if e.kron(IX) @ d != IX or IX.kron(e) @ d != IX:
            out.append(f"X_{H.order} not counital")
        if m @ m.kron(IY) != m @ IY.kron(m):
            out.append(f"Y_{H.order} not associative")
        if m @ u.kron(IY) != IY or m @ IY.kron(u) != IY:
            out.append(f"Y_{H.order} not unital")
        for K in G.lattice:
            if not H.is_subgroup_of(K):
                continue
            lam, rho = fam.lam(K, H), fam.rho(K, H)
            if lam.kron(lam) @ d != fam.delta(K) @ lam or fam.counit(K) @ lam != e:
                out.append("lambda is not a comonoid map")
            if rho @ fam.mu(K) != m @ rho.kron(rho) or rho @ fam.unit(K) != u:
                out.append("rho is not a monoid map")
        for g in G.generators:
            gH = H.conjugate(g)
            sx, sy = fam.sx(g, H), fam.sy(g, H)
            if sx.kron(sx) @ d != fam.delta(gH) @ sx or fam.counit(gH) @ sx != e:
                out.append("conjugation of X is not a comonoid map")
            if sy @ m != fam.mu(gH) @ sy.kron(sy) or sy @ u != fam.unit(gH):
                out.append("conjugation of Y is not a monoid map")
    return sorted(set(out))


def convolution_green_functor(fam: CoherentPairFamily, composition: bool = False,
                              check: bool = True) -> tuple[MackeyFunctor, DressPairing]:
    """Green functor on ``Hom_H(X_H, Y_H)``: ``x.y = mu (x (x) y) delta`` with unit ``iota eps``.

    With ``composition`` (and ``X = Y``) the product is composition ``x o y``
    with the identity as unit.
    """
    if check:
        bad = structure_problems(fam, composition)
        if bad:
            raise InputError("; ".join(bad))
    M, lv = hom_decat(fam, check=check)

    def product(H, a, b):
        if composition:
            return a @ b
        return fam.mu(H) @ a.kron(b) @ fam.delta(H)

    def beta(H):
        b = lv.basis[H.elements]
        return lv.to_coords(H, [product(H, x, y) for x in b for y in b])

    def unit(H):
        if composition:
            return lv.to_coords(H, [fam.x(H).identity()])
        return lv.to_coords(H, [fam.unit(H) @ fam.counit(H)])

    return M, make_pairing(M, M, M, beta, unit)


# -- standard families ------------------------------------------------------------------

def unit_family(G: Group, field: Field = QQ) -> CoherentPairFamily:
    """``X = Y = 1`` with the trivial (co)monoid structures."""
    one = Rep.trivial(G, field)
    I = one.identity()
    return CoherentPairFamily.from_restriction(one, one, "units", delta=I, counit=I, mu=I, unit=I)


def algebra_family(A: GAlgebra) -> CoherentPairFamily:
    """``X = 1`` as a comonoid and ``Y = A`` as a monoid, by restriction."""
    one = Rep.trivial(A.group, A.field)
    I = one.identity()
    return CoherentPairFamily.from_restriction(one, A.carrier, f"Hom(1,{A.name})",
                                               delta=I, counit=I, mu=A.mult, unit=A.unit)


def end_family(V: Rep, name: str = "") -> CoherentPairFamily:
    return CoherentPairFamily.from_restriction(V, V, name or f"End({V.name})")


def end_green_functor(V: Rep) -> tuple[MackeyFunctor, DressPairing]:
    return convolution_green_functor(end_family(V), composition=True)


def check_instance(M: MackeyFunctor, P: DressPairing | None, report: Report | None = None,
                   tag: str = "") -> Report:
    from .mackey import check_green_axioms, check_mackey_axioms
    rep = report or Report("instance", M.group.name, M.field.tag)
    check_mackey_axioms(M, rep, tag)
    if P is not None:
        check_green_axioms(M, P, rep, tag)
    return rep
