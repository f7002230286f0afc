"""Projection maps, the induced Frobenius algebra A(i) = i_*(1), its half-braiding,
the monad i_* i^* and its comparison with A(i) (x) -.

Every structure map is assembled from the four adjunction maps of
:class:`~greenkit.repcat.Induction`; nothing is written down from the expected
answer, so the checks below compare independently derived matrices.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from .errors import InputError, InvariantBreach
from .exactla import Matrix, flip
from .groups import Group, Subgroup
from .repcat import Induction, Rep, is_intertwiner, random_intertwiner, random_rep
from .report import Report

ANCHOR_TRIANGLE = "projection map factors through the lax/colax structure"
ANCHOR_PROJ = "projection formula: lproj and rproj are mutually inverse"
ANCHOR_FROB = "special Frobenius object"
ANCHOR_BRAID = "half-braiding on A(i)"
ANCHOR_DIM = "monoidal dimension of A(i) equals the index"
ANCHOR_MONAD = "monad i_* i^* and comparison with A(i) (x) -"


def _I(n: int, like: Matrix | Rep) -> Matrix:
    return Matrix.identity(n, like.field)


@dataclass
class ProjectionMaps:
    X: Rep
    Y: Rep
    rproj1: Matrix  # X (x) i_*Y -> i_*(i^*X (x) Y)
    rproj2: Matrix  # i_*Y (x) X -> i_*(Y (x) i^*X)
    lproj1: Matrix  # i_!(i^*X (x) Y) -> X (x) i_!Y
    lproj2: Matrix  # i_!(Y (x) i^*X) -> i_!Y (x) X


def build_projection_maps(ind: Induction, X: Rep, Y: Rep) -> ProjectionMaps:
    if X.field != Y.field:
        raise InputError("field mismatch")
    iY = ind.induce(Y)
    IX = X.identity()
    r1 = ind.induce_map(IX.kron(ind.eps_r(Y))) @ ind.eta_r(X.tensor(iY))
    r2 = ind.induce_map(ind.eps_r(Y).kron(IX)) @ ind.eta_r(iY.tensor(X))
    l1 = ind.eps_l(X.tensor(iY)) @ ind.induce_map(IX.kron(ind.eta_l(Y)))
    l2 = ind.eps_l(iY.tensor(X)) @ ind.induce_map(ind.eta_l(Y).kron(IX))
    return ProjectionMaps(X, Y, r1, r2, l1, l2)


def lax(ind: Induction, Y: Rep, Z: Rep) -> Matrix:
    """``i_*Y (x) i_*Z -> i_*(Y (x) Z)``."""
    return ind.induce_map(ind.eps_r(Y).kron(ind.eps_r(Z))) @ ind.eta_r(ind.induce(Y).tensor(ind.induce(Z)))


def colax(ind: Induction, Y: Rep, Z: Rep) -> Matrix:
    """``i_!(Y (x) Z) -> i_!Y (x) i_!Z``."""
    return ind.eps_l(ind.induce(Y).tensor(ind.induce(Z))) @ ind.induce_map(ind.eta_l(Y).kron(ind.eta_l(Z)))


def verify_projection_formula(ind: Induction, samples: list[tuple[Rep, Rep]], report: Report | None = None,
                              tag: str = "", lax_cap: int = 1024) -> Report:
    """Mutual inverses in both slots, equivariance, and (when ``i_*i^*X (x) i_*Y``
    has dimension at most ``lax_cap``) factorization through lax/colax maps."""
    rep = report or Report("projection", ind.G.name)
    for k, (X, Y) in enumerate(samples):
        pm = build_projection_maps(ind, X, Y)
        iY = ind.induce(Y)
        resX = ind.restrict(X)
        nX, nYi = X.dim, iY.dim
        sid = f"{tag}s{k}"
        rep.equal(f"{sid}.rproj1.lproj1", ANCHOR_PROJ, pm.rproj1 @ pm.lproj1, _I(ind.n * X.dim * Y.dim, X))
        rep.equal(f"{sid}.lproj1.rproj1", ANCHOR_PROJ, pm.lproj1 @ pm.rproj1, _I(nX * nYi, X))
        rep.equal(f"{sid}.rproj2.lproj2", ANCHOR_PROJ, pm.rproj2 @ pm.lproj2, _I(ind.n * X.dim * Y.dim, X))
        rep.equal(f"{sid}.lproj2.rproj2", ANCHOR_PROJ, pm.lproj2 @ pm.rproj2, _I(nX * nYi, X))
        src1, tgt1 = X.tensor(iY), ind.induce(resX.tensor(Y))
        src2, tgt2 = iY.tensor(X), ind.induce(Y.tensor(resX))
        rep.check(f"{sid}.equivariant", ANCHOR_PROJ,
                  is_intertwiner(pm.rproj1, src1, tgt1) and is_intertwiner(pm.rproj2, src2, tgt2)
                  and is_intertwiner(pm.lproj1, tgt1, src1) and is_intertwiner(pm.lproj2, tgt2, src2))
        if (ind.n * X.dim) * nYi > lax_cap:
            continue
        # factorization through lax / colax structure of induction
        ex, ee = ind.eta_r(X), ind.eps_l(X)
        IYi = iY.identity()
        rep.equal(f"{sid}.rproj1=lax(eta_r x 1)", ANCHOR_TRIANGLE, pm.rproj1, lax(ind, resX, Y) @ ex.kron(IYi))
        rep.equal(f"{sid}.rproj2=lax(1 x eta_r)", ANCHOR_TRIANGLE, pm.rproj2, lax(ind, Y, resX) @ IYi.kron(ex))
        rep.equal(f"{sid}.lproj1=(eps_l x 1)colax", ANCHOR_TRIANGLE, pm.lproj1, ee.kron(IYi) @ colax(ind, resX, Y))
        rep.equal(f"{sid}.lproj2=(1 x eps_l)colax", ANCHOR_TRIANGLE, pm.lproj2, IYi.kron(ee) @ colax(ind, Y, resX))
    return rep


@dataclass
class FrobeniusAlgebra:
    ind: Induction
    carrier: Rep
    mu: Matrix
    iota: Matrix
    delta: Matrix
    epsilon: Matrix

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @cached_property
    def coeval(self) -> Matrix:
        return self.delta @ self.iota

    @cached_property
    def eval(self) -> Matrix:
        return self.epsilon @ self.mu


def induced_frobenius(ind: Induction, field) -> FrobeniusAlgebra:
    one_h = Rep.trivial(ind.Hgroup, field)
    one_g = Rep.trivial(ind.G, field)
    A = ind.induce(one_h)
    return FrobeniusAlgebra(ind, A, lax(ind, one_h, one_h), ind.eta_r(one_g),
                            colax(ind, one_h, one_h), ind.eps_l(one_g))


def verify_frobenius(F: FrobeniusAlgebra, report: Report | None = None, tag: str = "") -> Report:
    rep = report or Report("frobenius", F.ind.G.name)
    n = F.dim
    I = _I(n, F.mu)
    mu, iota, delta, eps = F.mu, F.iota, F.delta, F.epsilon
    A, AA = F.carrier, F.carrier.tensor(F.carrier)
    one = Rep.trivial(F.ind.G, A.field)
    rep.check(f"{tag}equivariant", ANCHOR_FROB,
              is_intertwiner(mu, AA, A) and is_intertwiner(delta, A, AA)
              and is_intertwiner(iota, one, A) and is_intertwiner(eps, A, one))
    rep.equal(f"{tag}associativity", ANCHOR_FROB, mu @ mu.kron(I), mu @ I.kron(mu))
    rep.equal(f"{tag}left unit", ANCHOR_FROB, mu @ iota.kron(I), I)
    rep.equal(f"{tag}right unit", ANCHOR_FROB, mu @ I.kron(iota), I)
    rep.equal(f"{tag}coassociativity", ANCHOR_FROB, delta.kron(I) @ delta, I.kron(delta) @ delta)
    rep.equal(f"{tag}left counit", ANCHOR_FROB, eps.kron(I) @ delta, I)
    rep.equal(f"{tag}right counit", ANCHOR_FROB, I.kron(eps) @ delta, I)
    left = I.kron(mu) @ delta.kron(I)
    right = mu.kron(I) @ I.kron(delta)
    rep.equal(f"{tag}frobenius relation", ANCHOR_FROB, left, right)
    rep.equal(f"{tag}special", ANCHOR_FROB, mu @ delta, I)
    rep.check(f"{tag}separable", ANCHOR_FROB,
              (mu @ delta).is_identity() and delta @ mu == left and delta @ mu == right)
    sw = flip(n, n, A.field)
    rep.equal(f"{tag}commutative", ANCHOR_FROB, mu @ sw, mu)
    rep.equal(f"{tag}cocommutative", ANCHOR_FROB, sw @ delta, delta)
    alpha, beta = F.coeval, F.eval
    rep.equal(f"{tag}zigzag left", ANCHOR_FROB, beta.kron(I) @ I.kron(alpha), I)
    rep.equal(f"{tag}zigzag right", ANCHOR_FROB, I.kron(beta) @ alpha.kron(I), I)
    return rep


def frobenius_dimension(F: FrobeniusAlgebra):
    """``eps_l eta_r`` at the unit and the categorical trace ``beta flip alpha``; must agree."""
    one = Rep.trivial(F.ind.G, F.carrier.field)
    d1 = F.ind.eps_l(one) @ F.ind.eta_r(one)
    d2 = F.eval @ flip(F.dim, F.dim, F.carrier.field) @ F.coeval
    if d1 != d2:
        raise InvariantBreach(f"dimension routes disagree: {d1} vs {d2}")
    return d1.entry(0, 0)


def half_braiding(ind: Induction, X: Rep) -> Matrix:
    """``sigma_X: A (x) X -> X (x) A`` as lproj1(X, 1) after rproj2(1, X).

    The middle symmetry ``i_*(1 (x) i^*X) = i_*(i^*X (x) 1)`` is an identity
    matrix because the unit is a literal one-dimensional factor.
    """
    one = Rep.trivial(ind.Hgroup, X.field)
    pm = build_projection_maps(ind, X, one)
    return pm.lproj1 @ pm.rproj2


def verify_half_braiding(ind: Induction, samples: list[Rep], rng: random.Random,
                         report: Report | None = None, tag: str = "") -> Report:
    rep = report or Report("half-braiding", ind.G.name)
    field = samples[0].field
    F = induced_frobenius(ind, field)
    n = F.dim
    IA = _I(n, F.mu)
    one = Rep.trivial(ind.G, field)
    rep.check(f"{tag}sigma_1=id", ANCHOR_BRAID, half_braiding(ind, one).is_identity())
    for k, X in enumerate(samples):
        s = half_braiding(ind, X)
        rep.equal(f"{tag}s{k}.sigma=flip", ANCHOR_BRAID, s, flip(n, X.dim, field))
        rep.check(f"{tag}s{k}.invertible", ANCHOR_BRAID, s.is_invertible())
        rep.check(f"{tag}s{k}.equivariant", ANCHOR_BRAID,
                  is_intertwiner(s, F.carrier.tensor(X), X.tensor(F.carrier)))
        IX = X.identity()
        # centrality of the multiplication
        lhs = s @ F.mu.kron(IX)
        rhs = IX.kron(F.mu) @ s.kron(IA) @ IA.kron(s)
        rep.equal(f"{tag}s{k}.central", ANCHOR_BRAID, lhs, rhs)
        Y = samples[(k + 1) % len(samples)]
        sy = half_braiding(ind, Y)
        sxy = half_braiding(ind, X.tensor(Y))
        rep.equal(f"{tag}s{k}.braid", ANCHOR_BRAID, sxy, IX.kron(sy) @ s.kron(Y.identity()))
        f = random_intertwiner(X, Y, rng)
        rep.equal(f"{tag}s{k}.natural", ANCHOR_BRAID, f.kron(IA) @ s, sy @ IA.kron(f))
    try:
        d = frobenius_dimension(F)
        idx = ind.G.order // ind.H.order
        ok = d == field.scalar(idx)
        rep.check(f"{tag}dimension", ANCHOR_DIM, ok, None if ok else {"value": str(d), "index": idx})
    except InvariantBreach as exc:
        rep.check(f"{tag}dimension", ANCHOR_DIM, False, {"error": str(exc)})
    return rep


class MonadData:
    """The monad/comonad ``M = i_* i^*`` with ``m, u, d, e`` and ``pi: A (x) - -> M``."""

    def __init__(self, ind: Induction):
        self.ind = ind

    def apply(self, X: Rep) -> Rep:
        return self.ind.induce(self.ind.restrict(X))

    def map(self, f: Matrix) -> Matrix:
        return self.ind.induce_map(f)

    def m(self, X: Rep) -> Matrix:
        return self.ind.induce_map(self.ind.eps_r(self.ind.restrict(X)))

    def u(self, X: Rep) -> Matrix:
        return self.ind.eta_r(X)

    def d(self, X: Rep) -> Matrix:
        return self.ind.induce_map(self.ind.eta_l(self.ind.restrict(X)))

    def e(self, X: Rep) -> Matrix:
        return self.ind.eps_l(X)

    def pi(self, X: Rep) -> Matrix:
        one = Rep.trivial(self.ind.Hgroup, X.field)
        return build_projection_maps(self.ind, X, one).rproj2


def build_monad(ind: Induction) -> MonadData:
    return MonadData(ind)


def verify_monad(ind: Induction, samples: list[Rep], rng: random.Random, report: Report | None = None,
                 tag: str = "", cube_cap: int = 4096) -> Report:
    rep = report or Report("monad", ind.G.name)
    M = MonadData(ind)
    field = samples[0].field
    F = induced_frobenius(ind, field)
    n = F.dim
    IA = _I(n, F.mu)
    for k, X in enumerate(samples):
        sid = f"{tag}s{k}"
        MX = M.apply(X)
        MMX = M.apply(MX)
        I_MX = MX.identity()
        m, u, d, e = M.m(X), M.u(X), M.d(X), M.e(X)
        rep.check(f"{sid}.equivariant", ANCHOR_MONAD,
                  is_intertwiner(m, MMX, MX) and is_intertwiner(d, MX, MMX)
                  and is_intertwiner(u, X, MX) and is_intertwiner(e, MX, X))
        rep.equal(f"{sid}.unit left", ANCHOR_MONAD, m @ M.u(MX), I_MX)
        rep.equal(f"{sid}.unit right", ANCHOR_MONAD, m @ M.map(u), I_MX)
        rep.equal(f"{sid}.counit left", ANCHOR_MONAD, M.e(MX) @ d, I_MX)
        rep.equal(f"{sid}.counit right", ANCHOR_MONAD, M.map(e) @ d, I_MX)
        if n * n * n * X.dim <= cube_cap:
            mM, Mm = M.m(MX), M.map(m)
            dM, Md = M.d(MX), M.map(d)
            rep.equal(f"{sid}.associative", ANCHOR_MONAD, m @ Mm, m @ mM)
            rep.equal(f"{sid}.coassociative", ANCHOR_MONAD, Md @ d, dM @ d)
            rep.equal(f"{sid}.frobenius square left", ANCHOR_MONAD, d @ m, Mm @ dM)
            rep.equal(f"{sid}.frobenius square right", ANCHOR_MONAD, d @ m, mM @ Md)
        # comparison with A (x) -
        IX = X.identity()
        p = M.pi(X)
        AX = F.carrier.tensor(X)
        p_AX = M.pi(AX)
        pp = M.map(p) @ p_AX  # A (x) A (x) X -> M M X
        rep.check(f"{sid}.pi invertible", ANCHOR_MONAD, p.is_invertible())
        rep.check(f"{sid}.pi equivariant", ANCHOR_MONAD, is_intertwiner(p, AX, MX))
        rep.equal(f"{sid}.pi multiplication", ANCHOR_MONAD, p @ F.mu.kron(IX), m @ pp)
        rep.equal(f"{sid}.pi unit", ANCHOR_MONAD, p @ F.iota.kron(IX), u)
        rep.equal(f"{sid}.pi comultiplication", ANCHOR_MONAD, pp @ F.delta.kron(IX), d @ p)
        rep.equal(f"{sid}.pi counit", ANCHOR_MONAD, e @ p, F.epsilon.kron(IX))
        Y = samples[(k + 1) % len(samples)]
        f = random_intertwiner(X, Y, rng)
        rep.equal(f"{sid}.pi natural", ANCHOR_MONAD, M.map(f) @ p, M.pi(Y) @ IA.kron(f))
    return rep


def sample_reps(G: Group, field, rng: random.Random, count: int = 3, max_dim: int = 4) -> list[Rep]:
    return [random_rep(G, field, rng, max_dim) for _ in range(count)]


def frobenius_suite(G: Group, H: Subgroup, field, rng: random.Random, dim_cap: int = 3,
                    report: Report | None = None, samples: int = 3) -> Report:
    """Projection formulas, Frobenius laws, half-braiding, dimension and monad checks for ``H <= G``."""
    rep = report or Report("frobenius", G.name, field.tag)
    ind = Induction(G, H)
    xs = sample_reps(G, field, rng, samples, dim_cap)
    ys = sample_reps(H.as_group, field, rng, samples, dim_cap)
    verify_projection_formula(ind, list(zip(xs, ys)), rep, tag="proj.")
    F = induced_frobenius(ind, field)
    verify_frobenius(F, rep, tag="frob.")
    verify_half_braiding(ind, xs, rng, rep, tag="braid.")
    verify_monad(ind, xs, rng, rep, tag="monad.")
    return rep
