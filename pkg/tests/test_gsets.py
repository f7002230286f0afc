from collections import Counter

import numpy as np
import pytest
from hypothesis import given, strategies as st

from greenkit.corpus import CORPUS, by_name
from greenkit.errors import InputError
from greenkit.gsets import (GMap, GSet, disjoint_union, empty_gset, point, product, projection_maps, pullback,
                            to_point, transitive_gset)

NAMES = list(CORPUS)


def test_s3_mod_c2_squared(groups):
    G = groups("S3")
    X = transitive_gset(G, G.classes[1].representative)
    XX = product(X, X)
    assert XX.size == 9
    assert XX.decompose() == Counter({0: 1, 1: 1})


def test_small_sets(groups):
    G = groups("S3")
    assert empty_gset(G).size == 0 and empty_gset(G).orbits == []
    assert point(G).decompose() == Counter({3: 1})
    assert transitive_gset(G, G.trivial()).is_transitive()


def test_invalid_action_rejected(groups):
    G = groups("C2")
    with pytest.raises(InputError):
        GSet(G, np.array([[0, 1], [0, 0]]))
    with pytest.raises(InputError):
        GSet.from_generators(G, [[0, 0]])


def test_non_equivariant_map_rejected(groups):
    G = groups("C2")
    X = transitive_gset(G, G.trivial())
    with pytest.raises(InputError):
        GMap(X, X, [0, 0])


def test_transporter(groups):
    G = groups("S3")
    X = transitive_gset(G, G.classes[1].representative)
    for y in range(X.size):
        t = X.transporter(0, y)
        assert X.act(t, 0) == y


@pytest.mark.parametrize("name", NAMES)
def test_orbit_stabilizer(name):
    G = by_name(name)
    for H in G.lattice:
        X = transitive_gset(G, H)
        assert X.size * X.stabilizer(0).order == G.order
        assert X.stabilizer(0) == H


@given(st.sampled_from(NAMES), st.data())
def test_product_and_union_sizes(name, data):
    G = by_name(name)
    H = data.draw(st.sampled_from(G.lattice))
    K = data.draw(st.sampled_from(G.lattice))
    X, Y = transitive_gset(G, H), transitive_gset(G, K)
    XY = product(X, Y)
    assert sum(len(o) for o in XY.orbits) == X.size * Y.size
    # orbits of G/H x G/K are the double cosets H\G/K
    assert len(XY.orbits) == len(G.double_cosets(H, K))
    U = disjoint_union(X, Y)
    assert U.decompose() == X.decompose() + Y.decompose()
    p1, p2, _ = projection_maps(X, Y)
    GMap(XY, X, p1.table)
    GMap(XY, Y, p2.table)


@given(st.sampled_from(NAMES), st.data())
def test_fixed_points_count(name, data):
    G = by_name(name)
    H = data.draw(st.sampled_from(G.lattice))
    T = data.draw(st.sampled_from(G.lattice))
    X = transitive_gset(G, H)
    # |(G/H)^T| = #{g : g^-1 T g <= H} / |H|
    count = sum(1 for g in range(G.order) if T.conjugate(G.inv(g)).is_subgroup_of(H))
    assert len(X.fixed_points(T)) * H.order == count


def test_pullback_of_points(groups):
    G = groups("S3")
    X = transitive_gset(G, G.classes[1].representative)
    Y = transitive_gset(G, G.classes[2].representative)
    sq = pullback(to_point(X), to_point(Y))
    assert sq.witness
    assert sq.apex.size == X.size * Y.size
    assert sq.apex.decompose() == product(X, Y).decompose()
