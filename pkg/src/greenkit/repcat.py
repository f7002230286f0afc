"""Finite-dimensional kG-modules with explicit induction/restriction adjunctions.

For an inclusion H <= G with least left coset representatives
``g_1 = e, ..., g_n`` the induced module is ``(+)_j g_j (x) V``; an element
``g`` with ``g g_j = g_k h`` sends block ``j`` to block ``k`` through
``rho_V(h)``.  The same construction serves as left and right induction, and
the four adjunction maps are

* ``eta_l: V -> i^* i_! V``, ``v |-> e (x) v``;
* ``eps_l: i_! i^* W -> W``, ``g_j (x) w |-> g_j w``;
* ``eta_r: W -> i_* i^* W``, ``w |-> sum_j g_j (x) g_j^-1 w``;
* ``eps_r: i^* i_* V -> V``, projection onto the ``e`` block.

Tensor products are Kronecker products with the trivial module as a literal
unit, so associators, unitors and the monoidal structure of restriction are
identity matrices.
"""
from __future__ import annotations

import math
import random
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .errors import InputError
from .exactla import QQ, Field, Matrix, block_diag, hstack, vstack
from .groups import Group, LeftCosets, Subgroup


class Rep:
    """A representation: one matrix per group element, generated on demand."""

    def __init__(self, group: Group, dim: int, field: Field, element_fn: Callable[[int], Matrix],
                 name: str = ""):
        self.group = group
        self.dim = dim
        self.field = field
        self._fn = element_fn
        self._cache: dict[int, Matrix] = {}
        self.name = name

    def __repr__(self) -> str:
        return f"Rep({self.name or '?'}, {self.group.name}, dim={self.dim}, {self.field})"

    def element(self, g: int) -> Matrix:
        m = self._cache.get(g)
        if m is None:
            m = self._fn(g)
            self._cache[g] = m
        return m

    @property
    def gen_matrices(self) -> list[Matrix]:
        return [self.element(s) for s in self.group.generators]

    def same_as(self, other: "Rep") -> bool:
        """Equal as representations: same group elements and equal matrices."""
        if self.dim != other.dim or self.field != other.field:
            return False
        if self.group.elements != other.group.elements:
            return False
        return all(self.element(g) == other.element(g) for g in range(self.group.order))

    def identity(self) -> Matrix:
        return Matrix.identity(self.dim, self.field)

    def is_valid(self) -> bool:
        """Cayley-graph consistency: rho(s) rho(x) = rho(s x) for generators s, all x."""
        G = self.group
        if not self.element(0).is_identity():
            return False
        for s in G.generators:
            rs = self.element(s)
            for x in range(G.order):
                if rs @ self.element(x) != self.element(G.mul(s, x)):
                    return False
        return True

    # constructions
    @classmethod
    def from_generators(cls, group: Group, mats: Sequence[Matrix], field: Field | None = None,
                        name: str = "", check: bool = True, dim: int | None = None) -> "Rep":
        if len(mats) != len(group.generators):
            raise InputError("need one matrix per group generator")
        field = field or (mats[0].field if mats else QQ)
        d = mats[0].rows if mats else dim
        if d is None:
            raise InputError("dimension is needed for a group without generators")
        for m in mats:
            if m.shape != (d, d) or m.field != field:
                raise InputError("generator matrices must be square of equal size over one field")
        table: list[Matrix] = []
        for w in group.words:
            acc = Matrix.identity(d, field)
            for k in w:
                acc = acc @ mats[k]
            table.append(acc)
        rep = cls(group, d, field, lambda g: table[g], name)
        for g in range(group.order):
            rep._cache[g] = table[g]
        if check and not rep.is_valid():
            raise InputError("generator matrices do not define a representation")
        return rep

    @classmethod
    def trivial(cls, group: Group, field: Field = QQ) -> "Rep":
        one = Matrix.identity(1, field)
        return cls(group, 1, field, lambda g: one, "1")

    @classmethod
    def sign(cls, group: Group, field: Field = QQ) -> "Rep":
        plus, minus = Matrix.identity(1, field), Matrix.identity(1, field).scale(-1)

        def fn(g):
            return minus if _parity(group.elements[g]) else plus

        return cls(group, 1, field, fn, "sign")

    @classmethod
    def permutation(cls, group: Group, H: Subgroup, field: Field = QQ) -> "Rep":
        """k[G/H] on the canonical coset basis."""
        perm = group.left_cosets(H).permutation_table
        return cls(group, perm.shape[1], field, lambda g: Matrix.permutation(perm[g].tolist(), field),
                   f"k[G/{H.order}]")

    @classmethod
    def regular(cls, group: Group, field: Field = QQ) -> "Rep":
        return cls.permutation(group, group.trivial(), field)

    # functorial operations
    def pullback(self, group: Group, images: Sequence[int], name: str = "") -> "Rep":
        """Restriction along a homomorphism given by the image of every element."""
        images = list(images)
        return Rep(group, self.dim, self.field, lambda g: self.element(images[g]), name or self.name)

    def restrict(self, H: Subgroup) -> "Rep":
        if H.group.elements != self.group.elements:
            raise InputError("subgroup of a different group")
        return self.pullback(H.as_group, H.elements, self.name)

    def tensor(self, other: "Rep") -> "Rep":
        if self.group is not other.group and self.group.elements != other.group.elements:
            raise InputError("tensor of representations of different groups")
        if self.field != other.field:
            raise InputError("field mismatch")
        return Rep(self.group, self.dim * other.dim, self.field,
                   lambda g: self.element(g).kron(other.element(g)), f"({self.name}*{other.name})")

    def direct_sum(self, other: "Rep") -> "Rep":
        return Rep(self.group, self.dim + other.dim, self.field,
                   lambda g: block_diag([self.element(g), other.element(g)]), f"({self.name}+{other.name})")

    def change_basis(self, P: Matrix) -> "Rep":
        Pinv = P.inverse()
        return Rep(self.group, self.dim, self.field, lambda g: Pinv @ self.element(g) @ P, self.name)

    def to_field(self, field: Field) -> "Rep":
        return Rep(self.group, self.dim, field, lambda g: self.element(g).to_field(field), self.name)

    def materialize(self) -> "Rep":
        """Eagerly compute and freeze all element matrices."""
        for g in range(self.group.order):
            self.element(g)
        return self


def tensor_all(reps: Sequence[Rep]) -> Rep:
    out = reps[0]
    for r in reps[1:]:
        out = out.tensor(r)
    return out


def _parity(p: tuple[int, ...]) -> int:
    seen = [False] * len(p)
    parity = 0
    for i in range(len(p)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            parity ^= (length - 1) & 1
    return parity


def is_intertwiner(M: Matrix, V: Rep, W: Rep) -> bool:
    if M.shape != (W.dim, V.dim):
        return False
    return all(M @ V.element(s) == W.element(s) @ M for s in V.group.generators)


def commutant(pairs: Sequence[tuple[Matrix, Matrix]], m: int, n: int, field: Field) -> list[Matrix]:
    """Basis of the ``m x n`` matrices X with ``X A = B X`` for every pair ``(A, B)``."""
    K = Matrix.identity(m * n, field)
    Im, In = Matrix.identity(m, field), Matrix.identity(n, field)
    for a, b in pairs:
        if K.cols == 0:
            break
        # row-major vec: vec(X A) = (I (x) A^T) vec X, vec(B X) = (B (x) I) vec X
        C = Im.kron(a.T) - b.kron(In)
        K = K @ (C @ K).kernel()
    return [K[:, j:j + 1].reshape(m, n) for j in range(K.cols)]


def hom_space(V: Rep, W: Rep) -> list[Matrix]:
    """Basis of the G-equivariant maps V -> W (each a dim W x dim V matrix)."""
    if V.field != W.field:
        raise InputError("field mismatch")
    pairs = [(V.element(s), W.element(s)) for s in V.group.generators]
    return commutant(pairs, W.dim, V.dim, V.field)


def hom_dim(V: Rep, W: Rep) -> int:
    return len(hom_space(V, W))


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def _block_matrix(nb: int, d_row: int, d_col: int, blocks: dict[tuple[int, int], Matrix],
                  field: Field, ncb: int | None = None) -> Matrix:
    """Assemble a block matrix from a sparse dict of equally sized blocks."""
    ncb = nb if ncb is None else ncb
    den = _lcm(b.den for b in blocks.values()) if blocks else 1
    obj = any(b.num.dtype == object for b in blocks.values())
    arr = np.zeros((nb * d_row, ncb * d_col), dtype=object if obj else np.int64)
    for (bi, bj), b in blocks.items():
        part = b.num if b.den == den else b.num * (den // b.den)
        arr[bi * d_row:(bi + 1) * d_row, bj * d_col:(bj + 1) * d_col] = part
    return Matrix(arr, den, field)


class Induction:
    """Rectified adjunction data for an inclusion ``H <= G``."""

    def __init__(self, G: Group, H: Subgroup):
        if H.group is not G:
            raise InputError("subgroup of a different group")
        self.G = G
        self.H = H
        self.Hgroup = H.as_group
        self.cosets: LeftCosets = G.left_cosets(H)
        self.n = len(self.cosets)

    def __repr__(self) -> str:
        return f"Induction({self.H.order} <= {self.G.name})"

    @cached_property
    def _action(self) -> tuple[np.ndarray, np.ndarray]:
        """``perm[g, j] = k`` and ``hloc[g, j]`` (local index in H) with ``g g_j = g_k h``."""
        G, lc = self.G, self.cosets
        x = G.table[:, lc.reps]
        local = np.full(G.order, -1, dtype=np.int64)
        local[list(self.H.elements)] = np.arange(self.H.order)
        return lc.coset[x], local[lc.hpart[x]]

    def _check_h(self, V: Rep):
        if V.group.elements != self.Hgroup.elements:
            raise InputError("representation is not over the subgroup")

    def induce(self, V: Rep) -> Rep:
        """The induced module; left and right induction are this one functor."""
        self._check_h(V)
        perm, hloc = self._action
        n, d = self.n, V.dim

        def fn(g):
            blocks = {(int(perm[g, j]), j): V.element(int(hloc[g, j])) for j in range(n)}
            return _block_matrix(n, d, d, blocks, V.field)

        return Rep(self.G, n * d, V.field, fn, f"ind({V.name})")

    def coinduce(self, V: Rep) -> Rep:
        """Hom_H(kG, V) in the coordinates phi(g_k^-1); computed independently of :meth:`induce`."""
        self._check_h(V)
        G, lc, n, d = self.G, self.cosets, self.n, V.dim
        inv = G.inverses

        def fn(g):
            blocks = {}
            for k in range(n):
                # phi(g_k^-1 g) with g^-1 g_k = g_m h', so g_k^-1 g = h'^-1 g_m^-1
                y = G.mul(int(inv[g]), lc.reps[k])
                m, hp = int(lc.coset[y]), int(lc.hpart[y])
                blocks[(k, m)] = V.element(self.H.local(int(inv[hp])))
            return _block_matrix(n, d, d, blocks, V.field)

        return Rep(G, n * d, V.field, fn, f"coind({V.name})")

    def induce_map(self, f: Matrix) -> Matrix:
        return Matrix.identity(self.n, f.field).kron(f)

    def restrict(self, W: Rep) -> Rep:
        return W.restrict(self.H)

    def eta_l(self, V: Rep) -> Matrix:
        """``V -> i^* i_! V``."""
        I = V.identity()
        return _block_matrix(self.n, V.dim, V.dim, {(0, 0): I}, V.field, ncb=1)

    def eps_l(self, W: Rep) -> Matrix:
        """``i_! i^* W -> W``."""
        blocks = {(0, j): W.element(r) for j, r in enumerate(self.cosets.reps)}
        return _block_matrix(1, W.dim, W.dim, blocks, W.field, ncb=self.n)

    def eta_r(self, W: Rep) -> Matrix:
        """``W -> i_* i^* W``."""
        inv = self.G.inverses
        blocks = {(j, 0): W.element(int(inv[r])) for j, r in enumerate(self.cosets.reps)}
        return _block_matrix(self.n, W.dim, W.dim, blocks, W.field, ncb=1)

    def eps_r(self, V: Rep) -> Matrix:
        """``i^* i_* V -> V``."""
        I = V.identity()
        return _block_matrix(1, V.dim, V.dim, {(0, 0): I}, V.field, ncb=self.n)


def conjugation_images(source: Group, target: Group, x_perm: tuple[int, ...]) -> list[int]:
    """For ``target = x S x^-1``: position in ``source`` of ``x^-1 t x`` for each ``t``."""
    xinv = tuple(np.argsort(x_perm).tolist())
    out = []
    for p in target.elements:
        q = tuple(xinv[p[x_perm[i]]] for i in range(len(p)))
        pos = source.position.get(q)
        if pos is None:
            raise InputError("conjugate does not land in the source group")
        out.append(pos)
    return out


class BaseChange:
    """The double-coset decomposition ``res_K ind_H V = (+)_x ind_L c_x res V``.

    ``x`` runs over least representatives of ``K \\ G / H`` and
    ``L = K cap x H x^-1``.  Both mates of the comparison are built from the
    adjunction maps; they must be mutually inverse.
    """

    def __init__(self, G: Group, K: Subgroup, H: Subgroup):
        self.G, self.K, self.H = G, K, H
        self.ind_H = Induction(G, H)
        self.terms = []
        Kg = K.as_group
        for dc in G.double_cosets(K, H):
            x = dc.representative
            L_in_K = K.sub(dc.intersection.elements)
            q = Induction(Kg, L_in_K)
            # p: L -> H, l |-> x^-1 l x; pulled back representations are c_x res
            p_images = conjugation_images(self.H.as_group, L_in_K.as_group, G.elements[x])
            self.terms.append((x, q, p_images))

    def summand(self, V: Rep, term) -> Rep:
        x, q, p_images = term
        return q.induce(V.pullback(q.Hgroup, p_images, V.name))

    def left_mate(self, V: Rep) -> Matrix:
        """``(+)_x q_! p^* V -> res_K i_! V``."""
        ind = self.ind_H.induce(V)
        res = ind.restrict(self.K)
        eta = self.ind_H.eta_l(V)
        parts = []
        for x, q, p_images in self.terms:
            gamma = ind.element(x) @ eta  # p^*V -> q^* res_K i_! V
            parts.append(q.eps_l(res) @ q.induce_map(gamma))
        return hstack(parts)

    def right_mate(self, V: Rep) -> Matrix:
        """``res_K i_* V -> (+)_x q_* p^* V``."""
        ind = self.ind_H.induce(V)
        res = ind.restrict(self.K)
        eps = self.ind_H.eps_r(V)
        inv = self.G.inverses
        parts = []
        for x, q, p_images in self.terms:
            gamma = eps @ ind.element(int(inv[x]))  # q^* res_K i_* V -> p^*V
            parts.append(q.induce_map(gamma) @ q.eta_r(res))
        return vstack(parts)

    def target_dims(self, V: Rep) -> list[int]:
        return [len(q.cosets) * V.dim for _, q, _ in self.terms]


# -- random samples ------------------------------------------------------------

def random_unimodular(n: int, rng: random.Random, steps: int | None = None, field: Field = QQ) -> Matrix:
    """Product of elementary integer matrices: integral with integral inverse."""
    arr = np.eye(n, dtype=np.int64)
    for _ in range(steps if steps is not None else 2 * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        arr[i] += rng.choice((-1, 1)) * arr[j]
    if n >= 2:
        perm = list(range(n))
        rng.shuffle(perm)
        arr = arr[perm]
    return Matrix(arr, 1, field)


def random_rep(G: Group, field: Field, rng: random.Random, max_dim: int = 4) -> Rep:
    """A direct sum of trivial, sign, permutation and reduced permutation modules,
    written in a random integral basis; defined over Z so it reduces mod p."""
    subs = [h for h in G.lattice if G.order // h.order <= max_dim]
    target = rng.randint(1, max_dim)
    pieces: list[Rep] = []
    dim = 0
    while dim < target:
        room = target - dim
        kind = rng.choice(("trivial", "sign", "perm", "reduced"))
        if kind in ("perm", "reduced"):
            cands = [h for h in subs if G.order // h.order - (kind == "reduced") <= room
                     and G.order // h.order - (kind == "reduced") >= 1]
            if not cands:
                kind = "trivial"
            else:
                h = rng.choice(cands)
                r = Rep.permutation(G, h, QQ)
                if kind == "reduced":
                    r = _reduced(r)
        if kind == "trivial":
            r = Rep.trivial(G, QQ)
        elif kind == "sign":
            r = Rep.sign(G, QQ)
        pieces.append(r)
        dim += r.dim
    rep = pieces[0]
    for r in pieces[1:]:
        rep = rep.direct_sum(r)
    P = random_unimodular(rep.dim, rng)
    rep = rep.change_basis(P).materialize()
    rep.name = "+".join(r.name for r in pieces)
    return rep.to_field(field).materialize() if field != QQ else rep


def _reduced(perm_rep: Rep) -> Rep:
    """Augmentation kernel of a permutation module, basis ``e_i - e_last``."""
    n = perm_rep.dim
    f = perm_rep.field
    B = np.zeros((n, n - 1), dtype=np.int64)
    for i in range(n - 1):
        B[i, i] = 1
        B[n - 1, i] = -1
    Bm = Matrix(B, 1, f)
    # left inverse: take the first n-1 coordinates
    Lm = Matrix(np.eye(n, dtype=np.int64)[: n - 1], 1, f)
    return Rep(perm_rep.group, n - 1, f, lambda g: Lm @ perm_rep.element(g) @ Bm, f"red({perm_rep.name})")


def random_intertwiner(V: Rep, W: Rep, rng: random.Random) -> Matrix:
    basis = hom_space(V, W)
    out = Matrix.zeros(W.dim, V.dim, V.field)
    for b in basis:
        out = out + b.scale(rng.randint(-3, 3))
    return out


def kron_identity(n: int, f: Matrix) -> Matrix:
    return Matrix.identity(n, f.field).kron(f)



ANCHOR_TRIANGLE = "adjunction triangle identities"
ANCHOR_SPECIAL = "special Frobenius relation: eps_r eta_l = id"
ANCHOR_MACKEY = "strict Mackey formula: base-change mates are mutually inverse"
ANCHOR_MODEL = "induced and coinduced models agree"


def check_rectification(ind: Induction, samples_h: Sequence[Rep], samples_g: Sequence[Rep],
                        others: Sequence[Subgroup] | None = None, report=None, tag: str = ""):
    """Triangle identities, ``eps_r eta_l = id`` and invertibility of the base-change
    mates against every subgroup in ``others`` (default: all subgroups of G)."""
    from .report import Report

    rep = report or Report("rectification", ind.G.name)
    others = list(others) if others is not None else ind.G.lattice
    for k, V in enumerate(samples_h):
        sid = f"{tag}V{k}"
        iV = ind.induce(V)
        resiV = iV.restrict(ind.H)
        rep.check(f"{sid}.coinduced model", ANCHOR_MODEL, ind.coinduce(V).same_as(iV))
        rep.check(f"{sid}.eta_l,eps_r equivariant", ANCHOR_TRIANGLE,
                  is_intertwiner(ind.eta_l(V), V, resiV) and is_intertwiner(ind.eps_r(V), resiV, V))
        rep.equal(f"{sid}.triangle left (i_!)", ANCHOR_TRIANGLE,
                  ind.eps_l(iV) @ ind.induce_map(ind.eta_l(V)), iV.identity())
        rep.equal(f"{sid}.triangle right (i_*)", ANCHOR_TRIANGLE,
                  ind.induce_map(ind.eps_r(V)) @ ind.eta_r(iV), iV.identity())
        rep.equal(f"{sid}.special", ANCHOR_SPECIAL, ind.eps_r(V) @ ind.eta_l(V), V.identity())
        for K in others:
            bc = BaseChange(ind.G, K, ind.H)
            L, R = bc.left_mate(V), bc.right_mate(V)
            src = None
            ok_eq = True
            resK = iV.restrict(K)
            off = 0
            for term in bc.terms:
                src = bc.summand(V, term)
                part = L[:, off:off + src.dim]
                ok_eq = ok_eq and is_intertwiner(part, src, resK)
                off += src.dim
            kid = f"{sid}.K{K.order}:{','.join(map(str, K.generators))}"
            rep.check(f"{kid}.mates equivariant", ANCHOR_MACKEY, ok_eq)
            rep.equal(f"{kid}.left*right", ANCHOR_MACKEY, L @ R, resK.identity())
            rep.equal(f"{kid}.right*left", ANCHOR_MACKEY, R @ L, Matrix.identity(R.rows, V.field))
    for k, W in enumerate(samples_g):
        sid = f"{tag}W{k}"
        resW = ind.restrict(W)
        irW = ind.induce(resW)
        rep.check(f"{sid}.eps_l,eta_r equivariant", ANCHOR_TRIANGLE,
                  is_intertwiner(ind.eps_l(W), irW, W) and is_intertwiner(ind.eta_r(W), W, irW))
        rep.equal(f"{sid}.triangle left (i^*)", ANCHOR_TRIANGLE,
                  ind.eps_l(W) @ ind.eta_l(resW), resW.identity())
        rep.equal(f"{sid}.triangle right (i^*)", ANCHOR_TRIANGLE,
                  ind.eps_r(resW) @ ind.eta_r(W), resW.identity())
    return rep
