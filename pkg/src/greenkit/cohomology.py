"""Mod-p group cohomology in low degrees from normalized bar cochains.

A degree-n cochain of a subgroup S is a function ``S^n -> F_p`` vanishing
whenever an argument is the identity.  Such a cochain is stored by its values
on tuples of non-identity elements, in lexicographic order of the canonical
element order, so the cup product of coordinate vectors is their Kronecker
product.  :meth:`Cochain.table` expands to the dense table over ``S^n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import InputError, ResourceError
from .exactla import GF, CoordinateSystem, Field, Matrix, _rref, block_diag, hstack, vstack
from .groups import Group, Subgroup
from .mackey import DressPairing, MackeyFunctor, make_pairing

DEFAULT_COCHAIN_BOUND = 20736


def _as_subgroup(S: Group | Subgroup) -> Subgroup:
    return S.whole() if isinstance(S, Group) else S


class BarComplex:
    """Normalized bar cochains of a subgroup with trivial F_p coefficients."""

    def __init__(self, S: Group | Subgroup, p: int, bound: int = DEFAULT_COCHAIN_BOUND):
        self.subgroup = _as_subgroup(S)
        self.group = self.subgroup.group
        self.field: Field = GF(p)
        self.p = p
        self.bound = bound
        self.nonid = list(self.subgroup.elements[1:])  # identity is position 0
        self.q = len(self.nonid)
        self._slot = np.full(self.group.order, -1, dtype=np.int64)
        self._slot[self.nonid] = np.arange(self.q)

    def _guard(self, n: int):
        if n < 0:
            raise InputError("negative degree")
        if self.subgroup.order ** n > self.bound:
            raise ResourceError(f"|G|^{n} = {self.subgroup.order ** n} exceeds the cochain bound {self.bound}")

    def dim(self, n: int) -> int:
        return self.q ** n

    def tuples(self, n: int) -> np.ndarray:
        """All normalized n-tuples (parent positions), one per row, in coordinate order."""
        self._guard(n)
        if n == 0:
            return np.zeros((1, 0), dtype=np.int64)
        grid = np.indices((self.q,) * n).reshape(n, -1).T
        return np.asarray(self.nonid, dtype=np.int64)[grid]

    def index(self, tup: np.ndarray) -> np.ndarray:
        """Coordinate index of each row of ``tup``; -1 if some entry is the identity."""
        slots = self._slot[tup]
        bad = (slots < 0).any(axis=1)
        n = tup.shape[1]
        weights = self.q ** np.arange(n - 1, -1, -1, dtype=np.int64)
        idx = slots @ weights if n else np.zeros(tup.shape[0], dtype=np.int64)
        return np.where(bad, -1, idx)

    def differential(self, n: int) -> Matrix:
        """``d: C^n -> C^{n+1}`` on normalized coordinates."""
        return self._differential(n)

    def _differential(self, n: int) -> Matrix:
        cache = self.__dict__.setdefault("_dcache", {})
        if n in cache:
            return cache[n]
        self._guard(n + 1)
        T = self.tuples(n + 1)
        rows = np.arange(T.shape[0])
        out = np.zeros((T.shape[0], self.dim(n)), dtype=np.int64)
        t = self.group.table
        terms = [(T[:, 1:], 1)]
        for i in range(1, n + 1):
            merged = t[T[:, i - 1], T[:, i]]
            args = np.hstack([T[:, :i - 1], merged[:, None], T[:, i + 1:]])
            terms.append((args, (-1) ** i))
        terms.append((T[:, :n], (-1) ** (n + 1)))
        for args, sign in terms:
            cols = self.index(args)
            ok = cols >= 0
            np.add.at(out, (rows[ok], cols[ok]), sign)
        m = Matrix(out % self.p, 1, self.field)
        cache[n] = m
        return m

    def cochain(self, n: int, values: Matrix) -> "Cochain":
        if values.shape != (self.dim(n), 1):
            raise InputError("cochain vector of the wrong length")
        return Cochain(self, n, values.to_field(self.field))

    def constant_one(self) -> "Cochain":
        return self.cochain(0, Matrix.identity(1, self.field))


@dataclass(frozen=True)
class Cochain:
    complex: BarComplex
    degree: int
    values: Matrix  # column vector over normalized tuples

    @property
    def p(self) -> int:
        return self.complex.p

    def table(self) -> np.ndarray:
        """Dense values on ``S^n`` indexed by local element positions."""
        C = self.complex
        S = C.subgroup
        n = self.degree
        full = np.zeros((S.order,) * n, dtype=np.int64) if n else np.zeros((), dtype=np.int64)
        vals = np.array([int(self.values.entry(i, 0)) for i in range(self.values.rows)], dtype=np.int64)
        if n == 0:
            return vals.reshape(())
        full[(slice(1, None),) * n] = vals.reshape((C.q,) * n)
        return full

    def __call__(self, *args: int) -> int:
        """Value at a tuple of parent positions."""
        if len(args) != self.degree:
            raise InputError("wrong number of arguments")
        idx = self.complex.index(np.asarray([args], dtype=np.int64).reshape(1, -1))[0]
        return 0 if idx < 0 else int(self.values.entry(int(idx), 0))

    def d(self) -> "Cochain":
        return Cochain(self.complex, self.degree + 1, self.complex.differential(self.degree) @ self.values)

    def __add__(self, other: "Cochain") -> "Cochain":
        _same(self, other)
        return Cochain(self.complex, self.degree, self.values + other.values)

    def is_cocycle(self) -> bool:
        return self.d().values.is_zero()


def _same(u: Cochain, v: Cochain):
    if u.complex is not v.complex or u.degree != v.degree:
        raise InputError("cochains live in different spaces")


def cup(u: Cochain, v: Cochain) -> Cochain:
    """``(u v)(g_1..g_{m+n}) = u(g_1..g_m) v(g_{m+1}..g_{m+n})``."""
    if u.complex is not v.complex:
        raise InputError("cup product of cochains on different groups")
    C = u.complex
    C._guard(u.degree + v.degree)
    return Cochain(C, u.degree + v.degree, u.values.kron(v.values))


class CohomologySpace:
    """``H^n`` with a basis of cocycle representatives and class coordinates."""

    def __init__(self, C: BarComplex, n: int):
        self.complex = C
        self.degree = n
        F = C.field
        Z = C.differential(n).kernel()
        B = C.differential(n - 1).image() if n > 0 else Matrix.zeros(1, 0, F)
        self.cocycles = Z
        self.coboundaries = B
        both = hstack([B, Z])
        _, pivots, _ = _rref(both)
        chosen = [c - B.cols for c in pivots if c >= B.cols]
        self.reps = Z.take_cols(chosen) if chosen else Matrix.zeros(Z.rows, 0, F)
        self._coords = CoordinateSystem(hstack([self.reps, B]))

    @property
    def dim(self) -> int:
        return self.reps.cols

    @cached_property
    def basis(self) -> list["CohomologyClass"]:
        return [CohomologyClass(self, Cochain(self.complex, self.degree, self.reps[:, j:j + 1]))
                for j in range(self.dim)]

    def coords(self, cocycles: Matrix) -> Matrix:
        """Class coordinates of cocycle columns (raises if some column is not a cocycle)."""
        if cocycles.cols == 0:
            return Matrix.zeros(self.dim, 0, self.complex.field)
        return self._coords.coords(cocycles)[:self.dim, :]

    def is_coboundary(self, u: Cochain) -> bool:
        return self.coords(u.values).is_zero()


@dataclass(frozen=True)
class CohomologyClass:
    space: CohomologySpace
    representative: Cochain

    @property
    def degree(self) -> int:
        return self.space.degree

    def __eq__(self, other) -> bool:
        if not isinstance(other, CohomologyClass) or other.space is not self.space:
            return NotImplemented
        diff = self.representative.values - other.representative.values
        return self.space.coords(diff).is_zero()

    def __hash__(self) -> int:
        return hash((id(self.space), self.space.coords(self.representative.values).to_strings().__repr__()))


def cohomology_group(G: Group | Subgroup, p: int, n: int, bound: int = DEFAULT_COCHAIN_BOUND) -> CohomologySpace:
    C = BarComplex(G, p, bound)
    C._guard(n + 1)
    return CohomologySpace(C, n)


# -- restriction, conjugation, transfer ---------------------------------------------------

def _selection(target: BarComplex, source: BarComplex, n: int, args: np.ndarray) -> Matrix:
    """Matrix sending a source cochain f to the target cochain ``t -> f(args[t])``."""
    cols = source.index(args)
    out = np.zeros((target.dim(n), source.dim(n)), dtype=np.int64)
    ok = cols >= 0
    out[np.arange(out.shape[0])[ok], cols[ok]] = 1
    return Matrix(out, 1, target.field)


def restriction_matrix(big: BarComplex, small: BarComplex, n: int) -> Matrix:
    """Precomposition with the inclusion ``small <= big``."""
    if not small.subgroup.is_subgroup_of(big.subgroup):
        raise InputError("restriction to a non-subgroup")
    return _selection(small, big, n, small.tuples(n))


def conjugation_matrix(src: BarComplex, dst: BarComplex, g: int, n: int) -> Matrix:
    """``(c_g f)(x_1..x_n) = f(g^-1 x_1 g, ..)`` from cochains of H to cochains of gHg^-1."""
    G = src.group
    if dst.subgroup != src.subgroup.conjugate(g):
        raise InputError("target is not the conjugate subgroup")
    gi = G.inv(g)
    T = dst.tuples(n)
    args = np.vectorize(lambda x: G.conj(gi, int(x)), otypes=[np.int64])(T) if T.size else T
    return _selection(dst, src, n, args)


def _right_transversal(K: Subgroup, H: Subgroup) -> tuple[list[int], dict[int, int]]:
    """Least representatives of the right cosets ``H k`` in K, and ``k -> representative``."""
    G = K.group
    reps, rep_of = [], {}
    for k in K.elements:
        if k in rep_of:
            continue
        reps.append(k)
        for h in H.elements:
            rep_of[G.mul(h, k)] = k
    return reps, rep_of


def transfer_matrix(small: BarComplex, big: BarComplex, n: int) -> Matrix:
    """Cochain-level corestriction from ``H = small`` to ``K = big``.

    ``tr f(g_1..g_n) = sum_s f(h_1, .., h_n)`` over right coset representatives
    ``s``, where ``t_0 = s``, ``t_{i-1} g_i = h_i t_i`` with ``t_i`` the
    representative of ``H t_{i-1} g_i``.
    """
    H, K = small.subgroup, big.subgroup
    if not H.is_subgroup_of(K):
        raise InputError("transfer from a non-subgroup")
    G = K.group
    t = G.table
    inv = G.inverses
    reps, rep_of = _right_transversal(K, H)
    rep_arr = np.zeros(G.order, dtype=np.int64)
    for k, r in rep_of.items():
        rep_arr[k] = r
    T = big.tuples(n)
    out = np.zeros((T.shape[0], small.dim(n)), dtype=np.int64)
    rows = np.arange(T.shape[0])
    for s in reps:
        cur = np.full(T.shape[0], s, dtype=np.int64)
        hs = []
        for i in range(n):
            x = t[cur, T[:, i]]
            nxt = rep_arr[x]
            hs.append(t[x, inv[nxt]])
            cur = nxt
        args = np.stack(hs, axis=1) if hs else np.zeros((T.shape[0], 0), dtype=np.int64)
        cols = small.index(args)
        ok = cols >= 0
        np.add.at(out, (rows[ok], cols[ok]), 1)
    return Matrix(out % small.p, 1, small.field)


# -- the graded Green functor -----------------------------------------------------------

class CohomologyTables:
    """Bar complexes and cohomology spaces for every subgroup of G, degrees ``0..N``."""

    def __init__(self, G: Group, p: int, N: int, bound: int = DEFAULT_COCHAIN_BOUND):
        if G.order ** (N + 1) > bound:
            raise ResourceError(f"|G|^{N + 1} = {G.order ** (N + 1)} exceeds the cochain bound {bound}")
        self.group, self.p, self.N = G, p, N
        self.field = GF(p)
        self.complexes = {H.elements: BarComplex(H, p, bound) for H in G.lattice}
        self.spaces = {H.elements: [CohomologySpace(self.complexes[H.elements], n) for n in range(N + 1)]
                       for H in G.lattice}

    def complex(self, H: Subgroup) -> BarComplex:
        return self.complexes[H.elements]

    def space(self, H: Subgroup, n: int) -> CohomologySpace:
        return self.spaces[H.elements][n]

    def degrees(self, H: Subgroup) -> list[int]:
        return [n for n in range(self.N + 1) for _ in range(self.space(H, n).dim)]

    def rank(self, H: Subgroup) -> int:
        return sum(s.dim for s in self.spaces[H.elements])

    def graded(self, src: Subgroup, dst: Subgroup, cochain_map) -> Matrix:
        """Block-diagonal matrix on classes induced by a degreewise cochain map."""
        F = self.field
        blocks = []
        for n in range(self.N + 1):
            a, b = self.space(src, n), self.space(dst, n)
            blocks.append(b.coords(cochain_map(n) @ a.reps) if a.dim else Matrix.zeros(b.dim, 0, F))
        return block_diag(blocks)

    def cup_matrix(self, H: Subgroup) -> Matrix:
        """Cup product on classes of degree ``<= N``, truncated above N."""
        F = self.field
        r = self.rank(H)
        offs = np.cumsum([0] + [self.space(H, n).dim for n in range(self.N + 1)])
        deg = self.degrees(H)
        cols = []
        for a in range(r):
            for b in range(r):
                m, n = deg[a], deg[b]
                col = Matrix.zeros(r, 1, F)
                if m + n <= self.N:
                    ua = self.space(H, m).reps[:, a - offs[m]:a - offs[m] + 1]
                    vb = self.space(H, n).reps[:, b - offs[n]:b - offs[n] + 1]
                    c = self.space(H, m + n).coords(ua.kron(vb))
                    parts = [Matrix.zeros(offs[m + n], 1, F), c, Matrix.zeros(r - offs[m + n + 1], 1, F)]
                    col = vstack(parts)
                cols.append(col)
        return hstack(cols) if cols else Matrix.zeros(r, 0, F)

    def unit(self, H: Subgroup) -> Matrix:
        F = self.field
        one = self.complex(H).constant_one().values
        c = self.space(H, 0).coords(one)
        return vstack([c, Matrix.zeros(self.rank(H) - c.rows, 1, F)])


def cohomology_green_functor(G: Group, p: int, N: int, bound: int = DEFAULT_COCHAIN_BOUND
                             ) -> tuple[MackeyFunctor, DressPairing, CohomologyTables]:
    """``H -> H^{<=N}(H; F_p)`` with restriction, transfer, conjugation and cup product."""
    tab = CohomologyTables(G, p, N, bound)

    def res(K, H):
        return tab.graded(K, H, lambda n: restriction_matrix(tab.complex(K), tab.complex(H), n))

    def ind(H, K):
        return tab.graded(H, K, lambda n: transfer_matrix(tab.complex(H), tab.complex(K), n))

    def conj(g, H):
        gH = H.conjugate(g)
        return tab.graded(H, gH, lambda n: conjugation_matrix(tab.complex(H), tab.complex(gH), g, n))

    M = MackeyFunctor.build(G, tab.field, tab.rank, res, ind, conj, name=f"H^<={N}(-;F_{p})",
                            degrees=tab.degrees)
    P = make_pairing(M, M, M, tab.cup_matrix, tab.unit)
    return M, P, tab
