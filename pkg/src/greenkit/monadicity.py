"""kH-modules as A(i)-modules and A(i)-comodules inside kG-modules.

``comparison_module`` sends an H-representation V to ``i_*V`` with the action
``i_*(eps_r) . pi``; ``comparison_inverse`` recovers an H-representation as
the image of the idempotent ``rho(e_1 (x) -)`` where ``e_1`` is the basis
idempotent of the trivial coset.  Tensor products over A are images of the
separability idempotent ``sum_j rho(e_j) (x) rho(e_j)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InputError, InvariantBreach
from .exactla import CoordinateSystem, Matrix, flip
from .frobenius import FrobeniusAlgebra, build_projection_maps, induced_frobenius, lax
from .groups import Group, Subgroup
from .repcat import Induction, Rep, commutant, hom_space, is_intertwiner, random_rep
from .report import Report

ANCHOR_EQUIV = "H-representations are A(i)-modules and A(i)-comodules"
ANCHOR_TENSOR = "comparison is monoidal for the tensor product over A(i)"


@dataclass
class AModule:
    carrier: Rep
    action: Matrix  # A (x) X -> X


@dataclass
class AComodule:
    carrier: Rep
    coaction: Matrix  # X -> A (x) X


def _basis_vector(n: int, j: int, field) -> Matrix:
    return Matrix.identity(n, field)[:, j:j + 1]


def _rep_on_subspace(basis: Matrix, X: Rep, group: Group, images) -> Rep:
    """The representation of ``group`` on the column span of ``basis``, acting
    through ``X`` along ``images`` (element positions of ``X.group``)."""
    cs = CoordinateSystem(basis)
    mats = []
    for s in group.generators:
        try:
            mats.append(cs.coords(X.element(images[s]) @ basis))
        except InputError:
            raise InvariantBreach("subspace is not stable under the group action") from None
    return Rep.from_generators(group, mats, X.field, name="sub", dim=basis.cols)


class Monadicity:
    def __init__(self, G: Group, H: Subgroup, field):
        self.ind = Induction(G, H)
        self.field = field
        self.F: FrobeniusAlgebra = induced_frobenius(self.ind, field)
        self.n = self.F.dim

    # modules
    def action_component(self, M: AModule, j: int) -> Matrix:
        return M.action @ _basis_vector(self.n, j, self.field).kron(M.carrier.identity())

    def comparison_module(self, V: Rep) -> AModule:
        ind = self.ind
        iV = ind.induce(V)
        one = Rep.trivial(ind.Hgroup, self.field)
        pi = build_projection_maps(ind, iV, one).rproj2  # A (x) i_*V -> i_* i^* i_*V
        return AModule(iV, ind.induce_map(ind.eps_r(V)) @ pi)

    def free_module(self, X: Rep) -> AModule:
        return AModule(self.F.carrier.tensor(X), self.F.mu.kron(X.identity()))

    def module_laws(self, M: AModule) -> dict[str, bool]:
        I = M.carrier.identity()
        IA = Matrix.identity(self.n, self.field)
        r = M.action
        return {
            "associative": r @ self.F.mu.kron(I) == r @ IA.kron(r),
            "unital": (r @ self.F.iota.kron(I)).is_identity(),
            "equivariant": is_intertwiner(r, self.F.carrier.tensor(M.carrier), M.carrier),
        }

    def comparison_inverse(self, M: AModule) -> tuple[Rep, Matrix]:
        """The H-representation on the image of ``rho(e_1 (x) -)`` and its inclusion."""
        e = self.action_component(M, 0)
        if e @ e != e:
            raise InvariantBreach("rho(e_1) is not idempotent")
        B = e.image()
        H = self.ind.H
        return _rep_on_subspace(B, M.carrier, H.as_group, H.elements), B

    def module_hom(self, M: AModule, N: AModule) -> list[Matrix]:
        pairs = [(M.carrier.element(s), N.carrier.element(s)) for s in M.carrier.group.generators]
        pairs += [(self.action_component(M, j), self.action_component(N, j)) for j in range(self.n)]
        return commutant(pairs, N.carrier.dim, M.carrier.dim, self.field)

    # comodules
    def comparison_comodule(self, V: Rep) -> AComodule:
        ind = self.ind
        iV = ind.induce(V)
        one = Rep.trivial(ind.Hgroup, self.field)
        l2 = build_projection_maps(ind, iV, one).lproj2  # i_!(1 (x) i^* i_!V) -> A (x) i_!V
        return AComodule(iV, l2 @ ind.induce_map(ind.eta_l(V)))

    def cofree_comodule(self, X: Rep) -> AComodule:
        return AComodule(self.F.carrier.tensor(X), self.F.delta.kron(X.identity()))

    def comodule_laws(self, C: AComodule) -> dict[str, bool]:
        I = C.carrier.identity()
        IA = Matrix.identity(self.n, self.field)
        c = C.coaction
        return {
            "coassociative": self.F.delta.kron(I) @ c == IA.kron(c) @ c,
            "counital": (self.F.epsilon.kron(I) @ c).is_identity(),
            "equivariant": is_intertwiner(c, C.carrier, self.F.carrier.tensor(C.carrier)),
        }

    def coaction_component(self, C: AComodule, j: int) -> Matrix:
        return _basis_vector(self.n, j, self.field).T.kron(C.carrier.identity()) @ C.coaction

    def comodule_inverse(self, C: AComodule) -> tuple[Rep, Matrix]:
        e = self.coaction_component(C, 0)
        if e @ e != e:
            raise InvariantBreach("(e_1^* (x) 1) c is not idempotent")
        B = e.image()
        H = self.ind.H
        return _rep_on_subspace(B, C.carrier, H.as_group, H.elements), B

    def comodule_hom(self, C: AComodule, D: AComodule) -> list[Matrix]:
        pairs = [(C.carrier.element(s), D.carrier.element(s)) for s in C.carrier.group.generators]
        pairs += [(self.coaction_component(C, j), self.coaction_component(D, j)) for j in range(self.n)]
        return commutant(pairs, D.carrier.dim, C.carrier.dim, self.field)

    # round-trip isomorphisms
    def unit_iso(self, V: Rep, U: Rep, B: Matrix) -> Matrix:
        """``U -> V``: the recovered subspace of ``i_*V`` projected to the identity block."""
        return self.ind.eps_r(V) @ B

    def counit_iso(self, X: Rep, B: Matrix) -> Matrix:
        """``i_! U -> X`` for ``U`` the image of ``B`` inside ``X``."""
        return self.ind.eps_l(X) @ self.ind.induce_map(B)

    # tensor over A
    def tensor_idempotent(self, M: AModule, N: AModule) -> Matrix:
        alpha = self.F.coeval
        n = self.n
        P = Matrix.zeros(M.carrier.dim * N.carrier.dim, M.carrier.dim * N.carrier.dim, self.field)
        for a in range(n):
            for b in range(n):
                c = alpha.entry(a * n + b, 0)
                if c:
                    P = P + self.action_component(M, a).kron(self.action_component(N, b)).scale(c)
        return P

    def tensor_over_a(self, M: AModule, N: AModule) -> tuple[AModule, Matrix]:
        """``M (x)_A N`` as the image of the separability idempotent, with its inclusion."""
        P = self.tensor_idempotent(M, N)
        B = P.image()
        MN = M.carrier.tensor(N.carrier)
        carrier = _rep_on_subspace(B, MN, M.carrier.group, list(range(M.carrier.group.order)))
        cs = CoordinateSystem(B)
        IA = Matrix.identity(self.n, self.field)
        act = M.action.kron(N.carrier.identity()) @ IA.kron(B)
        return AModule(carrier, cs.coords(act)), B


def verify_equivalence(G: Group, H: Subgroup, field, rng: random.Random, pairs: int = 3, dim_cap: int = 2,
                       report: Report | None = None, tag: str = "") -> Report:
    rep = report or Report("monadicity", G.name, field.tag)
    mo = Monadicity(G, H, field)
    ind, F = mo.ind, mo.F
    Hg = H.as_group
    cap = dim_cap if mo.n <= 4 else 2 if mo.n <= 6 else 1
    samples = [(random_rep(Hg, field, rng, cap), random_rep(Hg, field, rng, cap)) for _ in range(pairs)]
    samples.insert(0, (Rep.trivial(Hg, field), Rep.trivial(Hg, field)))
    for k, (V, W) in enumerate(samples):
        sid = f"{tag}p{k}"
        EV, EW = mo.comparison_module(V), mo.comparison_module(W)
        laws = mo.module_laws(EV)
        rep.check(f"{sid}.module laws", ANCHOR_EQUIV, all(laws.values()), {"laws": laws})
        U, B = mo.comparison_inverse(EV)
        iso = mo.unit_iso(V, U, B)
        rep.check(f"{sid}.module round trip H", ANCHOR_EQUIV,
                  U.dim == V.dim and iso.is_invertible() and is_intertwiner(iso, U, V))
        back = mo.counit_iso(EV.carrier, B)
        EU = mo.comparison_module(U)
        ok = (back.is_invertible() and is_intertwiner(back, EU.carrier, EV.carrier)
              and back @ EU.action == EV.action @ Matrix.identity(mo.n, field).kron(back))
        rep.check(f"{sid}.module round trip A", ANCHOR_EQUIV, ok)
        hH = len(hom_space(V, W))
        hA = len(mo.module_hom(EV, EW))
        rep.check(f"{sid}.hom dims modules", ANCHOR_EQUIV, hH == hA, {"hom_H": hH, "hom_A": hA})
        # naturality of the round trip against a sampled morphism
        basis = hom_space(V, W)
        if basis:
            f = basis[rng.randrange(len(basis))]
            UW, BW = mo.comparison_inverse(EW)
            isoW = mo.unit_iso(W, UW, BW)
            fU = CoordinateSystem(BW).coords(ind.induce_map(f) @ B)
            rep.equal(f"{sid}.round trip natural", ANCHOR_EQUIV, isoW @ fU, f @ iso)
        # comodule side
        CV, CW = mo.comparison_comodule(V), mo.comparison_comodule(W)
        claws = mo.comodule_laws(CV)
        rep.check(f"{sid}.comodule laws", ANCHOR_EQUIV, all(claws.values()), {"laws": claws})
        U2, B2 = mo.comodule_inverse(CV)
        iso2 = mo.unit_iso(V, U2, B2)
        rep.check(f"{sid}.comodule round trip H", ANCHOR_EQUIV,
                  U2.dim == V.dim and iso2.is_invertible() and is_intertwiner(iso2, U2, V))
        back2 = mo.counit_iso(CV.carrier, B2)
        CU = mo.comparison_comodule(U2)
        ok2 = (back2.is_invertible() and is_intertwiner(back2, CU.carrier, CV.carrier)
               and CV.coaction @ back2 == Matrix.identity(mo.n, field).kron(back2) @ CU.coaction)
        rep.check(f"{sid}.comodule round trip A", ANCHOR_EQUIV, ok2)
        hC = len(mo.comodule_hom(CV, CW))
        rep.check(f"{sid}.hom dims comodules", ANCHOR_EQUIV, hH == hC, {"hom_H": hH, "hom_coA": hC})
        # monoidal comparison E(V (x) W) = EV (x)_A EW
        T, BT = mo.tensor_over_a(EV, EW)
        VW = V.tensor(W)
        EVW = mo.comparison_module(VW)
        phi = lax(ind, V, W) @ BT
        okT = (T.carrier.dim == EVW.carrier.dim and phi.is_invertible()
               and is_intertwiner(phi, T.carrier, EVW.carrier)
               and phi @ T.action == EVW.action @ Matrix.identity(mo.n, field).kron(phi))
        rep.check(f"{sid}.tensor over A", ANCHOR_TENSOR, okT,
                  {"dim_tensor_A": T.carrier.dim, "dim_E(VW)": EVW.carrier.dim})
    # the unit: EV (x)_A EV at V = 1 is A itself
    one = Rep.trivial(Hg, field)
    T1, _ = mo.tensor_over_a(mo.comparison_module(one), mo.comparison_module(one))
    rep.check(f"{tag}unit tensor", ANCHOR_TENSOR, T1.carrier.dim == mo.n)
    # free modules: (A (x) X) (x)_A (A (x) Y) = A (x) X (x) Y
    X = random_rep(G, field, rng, 2)
    Y = random_rep(G, field, rng, 2)
    FX, FY = mo.free_module(X), mo.free_module(Y)
    T, BT = mo.tensor_over_a(FX, FY)
    IA = Matrix.identity(mo.n, field)
    collapse = F.mu.kron(X.identity()).kron(Y.identity()) @ IA.kron(flip(X.dim, mo.n, field)).kron(Y.identity())
    phi = collapse @ BT
    target = F.carrier.tensor(X).tensor(Y)
    rep.check(f"{tag}free tensor", ANCHOR_TENSOR,
              T.carrier.dim == mo.n * X.dim * Y.dim and phi.is_invertible()
              and is_intertwiner(phi, T.carrier, target))
    # free module on X agrees with the comparison module of i^*X through pi
    pi = build_projection_maps(ind, X, Rep.trivial(Hg, field)).rproj2
    EX = mo.comparison_module(ind.restrict(X))
    rep.equal(f"{tag}free vs comparison", ANCHOR_EQUIV,
              pi @ F.mu.kron(X.identity()), EX.action @ IA.kron(pi))
    # (A, mu) corresponds to the trivial H-representation
    UA, _ = mo.comparison_inverse(AModule(F.carrier, F.mu))
    rep.check(f"{tag}A is trivial", ANCHOR_EQUIV, UA.dim == 1 and UA.same_as(Rep.trivial(Hg, field)))
    return rep
