import random

import pytest

from greenkit.corpus import by_name
from greenkit.exactla import GF, QQ
from greenkit.monadicity import Monadicity, verify_equivalence
from greenkit.repcat import Rep, hom_dim, random_rep


@pytest.mark.parametrize("name", ["C2", "S3", "C2xC2", "D4", "Q8"])
@pytest.mark.parametrize("field", [QQ, GF(5)], ids=["q", "f5"])
def test_equivalence_every_inclusion(name, field):
    G = by_name(name)
    for H in G.lattice:
        rep = verify_equivalence(G, H, field, random.Random(7), pairs=3, dim_cap=2)
        assert rep.passed, [c.id for c in rep.failures]


def test_modular_case(groups):
    G = groups("S3")
    for H in G.lattice:
        rep = verify_equivalence(G, H, GF(2), random.Random(1), pairs=2, dim_cap=2)
        assert rep.passed


def test_comparison_round_trip_dimension(groups):
    G = groups("S3")
    H = G.classes[1].representative
    mo = Monadicity(G, H, QQ)
    V = random_rep(H.as_group, QQ, random.Random(4), 3)
    M = mo.comparison_module(V)
    assert all(mo.module_laws(M).values())
    U, B = mo.comparison_inverse(M)
    assert U.dim == V.dim
    assert hom_dim(U, V) == hom_dim(V, V)


def test_free_module_homs_match_frobenius_reciprocity(groups):
    G = groups("S3")
    H = G.classes[2].representative
    mo = Monadicity(G, H, QQ)
    X, Y = Rep.trivial(G), Rep.sign(G)
    F1, F2 = mo.free_module(X), mo.free_module(Y)
    # A-linear maps A (x) X -> A (x) Y are H-maps X -> A (x) Y restricted
    assert len(mo.module_hom(F1, F2)) == hom_dim(X.restrict(H), Y.restrict(H))
