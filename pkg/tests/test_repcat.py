import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from greenkit.corpus import CORPUS, by_name
from greenkit.errors import InputError
from greenkit.exactla import GF, QQ, Matrix
from greenkit.repcat import (BaseChange, Induction, Rep, check_rectification, hom_dim, hom_space, is_intertwiner,
                             random_intertwiner, random_rep)

NAMES = list(CORPUS)
SMALL = ["C2", "C3", "C4", "C2xC2", "S3", "C6", "D4", "Q8"]


def character_hom_dim(V, W):
    """<chi_V, chi_W> over Q, independent of any kernel computation."""
    G = V.group
    total = sum(Fraction(V.element(G.inv(g)).trace()) * Fraction(W.element(g).trace()) for g in range(G.order))
    return total / G.order


def test_examples(groups):
    G = groups("S3")
    C2 = G.classes[1].representative
    assert hom_dim(Rep.regular(G), Rep.trivial(G)) == 1
    assert hom_dim(Rep.permutation(G, C2), Rep.permutation(G, C2)) == 2
    assert hom_dim(Rep.regular(G), Rep.regular(G)) == 6
    assert hom_dim(Rep.sign(G), Rep.trivial(G)) == 0


def test_from_generators_validation(groups):
    G = groups("C2")
    with pytest.raises(InputError):
        Rep.from_generators(G, [Matrix.from_rows([[1, 1], [0, 1]])])
    with pytest.raises(InputError):
        Rep.from_generators(G, [])
    r = Rep.from_generators(G, [Matrix.from_rows([[0, 1], [1, 0]])])
    assert r.is_valid()
    with pytest.raises(InputError):
        Rep.from_generators(groups("C1"), [])
    assert Rep.from_generators(groups("C1"), [], QQ, dim=2).dim == 2


def test_induction_dimension_and_model(groups):
    G = groups("D4")
    for H in G.lattice:
        ind = Induction(G, H)
        V = random_rep(H.as_group, QQ, random.Random(3), 3)
        iV = ind.induce(V)
        assert iV.dim == ind.n * V.dim
        assert iV.is_valid()
        assert ind.coinduce(V).same_as(iV)


@pytest.mark.parametrize("name", SMALL)
@pytest.mark.parametrize("field", [QQ, GF(5)], ids=["q", "f5"])
def test_rectification(name, field):
    G = by_name(name)
    rng = random.Random(11)
    for H in G.lattice:
        ind = Induction(G, H)
        xs = [random_rep(H.as_group, field, rng, 3) for _ in range(2)]
        ws = [random_rep(G, field, rng, 3) for _ in range(2)]
        rep = check_rectification(ind, xs, ws)
        assert rep.passed, [c.id for c in rep.failures]


def test_base_change_dimensions(groups):
    G = groups("S3")
    C2 = G.classes[1].representative
    bc = BaseChange(G, C2, C2)
    V = Rep.trivial(C2.as_group)
    # res_{C2} ind_{C2}^{S3} 1 splits over the two double cosets
    assert sorted(bc.target_dims(V)) == [1, 2]
    assert bc.left_mate(V).is_invertible()


@given(st.sampled_from(SMALL), st.integers(0, 10**6))
def test_hom_dim_matches_characters(name, seed):
    G = by_name(name)
    rng = random.Random(seed)
    V, W = random_rep(G, QQ, rng, 3), random_rep(G, QQ, rng, 3)
    assert hom_dim(V, W) == character_hom_dim(V, W)
    for f in hom_space(V, W):
        assert is_intertwiner(f, V, W)


@given(st.sampled_from(SMALL), st.integers(0, 10**6), st.data())
def test_frobenius_reciprocity(name, seed, data):
    G = by_name(name)
    H = data.draw(st.sampled_from(G.lattice))
    rng = random.Random(seed)
    ind = Induction(G, H)
    V, W = random_rep(H.as_group, QQ, rng, 2), random_rep(G, QQ, rng, 2)
    assert hom_dim(ind.induce(V), W) == hom_dim(V, W.restrict(H)) == hom_dim(W, ind.induce(V))


@given(st.sampled_from(SMALL), st.integers(0, 10**6), st.sampled_from([QQ, GF(2), GF(3)]))
def test_random_reps_are_valid(name, seed, field):
    G = by_name(name)
    rng = random.Random(seed)
    V, W = random_rep(G, field, rng, 4), random_rep(G, field, rng, 4)
    assert V.is_valid() and V.dim <= 4
    assert is_intertwiner(random_intertwiner(V, W, rng), V, W)
    assert V.tensor(W).is_valid()
