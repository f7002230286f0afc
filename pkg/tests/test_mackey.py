import json

import pytest
from hypothesis import given, strategies as st

from greenkit.corpus import CORPUS, by_name
from greenkit.errors import InputError
from greenkit.exactla import GF, QQ, Matrix
from greenkit.gsets import disjoint_union, empty_gset, product, transitive_gset
from greenkit.instances import burnside_green_functor, fixed_point_green_functor, function_algebra
from greenkit.mackey import (DressPairing, check_dress_pairing, check_external_roundtrip, check_green_axioms,
                             check_mackey_axioms, corrupt, dress_to_external, extend_to_gset, external_at,
                             ind_along, make_pairing, module_over_itself, res_along, coset_projection)

NAMES = list(CORPUS)


def test_extension_ranks(groups):
    G = groups("S3")
    M, _ = burnside_green_functor(G)
    assert extend_to_gset(M, empty_gset(G)).rank == 0
    C2 = G.classes[1].representative
    X = transitive_gset(G, C2)
    assert extend_to_gset(M, product(X, X)).rank == 3
    Y = transitive_gset(G, G.classes[2].representative)
    assert extend_to_gset(M, disjoint_union(X, Y)).rank == M.rank(C2) + M.rank(G.classes[2].representative)


def test_transitive_set_matches_levels(groups):
    G = groups("D4")
    M, _ = burnside_green_functor(G)
    for K in G.lattice:
        for H in G.lattice:
            if H.is_subgroup_of(K):
                f = coset_projection(G, H, K)
                v = extend_to_gset(M, f.source)
                assert v.stabilizers == [H]
                assert res_along(M, f) == M.res(K, H)
                assert ind_along(M, f) == M.ind(H, K)


def test_corrupted_functor_fails_with_witness(groups):
    G = groups("S3")
    M, _ = burnside_green_functor(G)
    bad = corrupt(M, G.trivial(), G.classes[1].representative)
    rep = check_mackey_axioms(bad)
    assert not rep.passed
    assert all(c.witness for c in rep.failures)
    d = rep.to_dict()
    assert d["status"] == "fail" and d["failure_count"] == len(rep.failures)


def test_incomplete_tables_rejected(groups):
    G = groups("C2")
    M, _ = burnside_green_functor(G)
    k = M.idx(G.whole())
    broken = M.copy_with(res_table={key: v for key, v in M.res_table.items() if key != (k, k)})
    with pytest.raises(InputError):
        check_mackey_axioms(broken)
    with pytest.raises(InputError):
        M.res(G.trivial(), G.whole())


def test_mixed_rings_rejected(groups):
    G = groups("C2")
    M, _ = burnside_green_functor(G)
    N, _ = fixed_point_green_functor(function_algebra(G, G.trivial(), GF(3)))
    with pytest.raises(InputError):
        make_pairing(M, N, M, lambda H: Matrix.zeros(1, 1))


def test_green_needs_units(groups):
    G = groups("C2")
    M, P = burnside_green_functor(G)
    with pytest.raises(InputError):
        check_green_axioms(M, DressPairing(M, M, M, P.beta, None))


def test_module_over_itself(groups):
    M, P = burnside_green_functor(groups("S3"))
    assert check_dress_pairing(module_over_itself(M, P)).passed


def test_trivial_group_external_is_internal(groups):
    G = groups("C1")
    M, P = burnside_green_functor(G)
    pt = transitive_gset(G, G.whole())
    assert external_at(P, pt, pt) == P.at(G.whole())
    assert check_external_roundtrip(P).passed


def test_external_induction_naturality_klein(groups):
    G = groups("C2xC2")
    M, P = burnside_green_functor(G)
    H = G.classes[1].representative
    f = coset_projection(G, G.trivial(), H)
    T = transitive_gset(G, H)
    from greenkit.mackey import _product_map
    lhs = ind_along(M, _product_map(f, T)) @ external_at(P, f.source, T)
    IT = Matrix.identity(extend_to_gset(M, T).rank, QQ)
    rhs = external_at(P, f.target, T) @ ind_along(M, f).kron(IT)
    assert lhs == rhs
    E = dress_to_external(P)
    assert len(E.table) == len(G.classes) ** 2


def test_interchange_format(groups):
    M, _ = burnside_green_functor(groups("S3"))
    d = json.loads(M.to_json())
    assert d["ring"] == "Z"
    assert set(d["levels"]) == {M.label(h) for h in M.subgroups}
    assert d["levels"]["3.0"]["rank"] == 4
    assert all(isinstance(x, str) for row in d["res"]["3.0>0.0"] for x in row)


@given(st.sampled_from(NAMES), st.data())
def test_additivity_of_extension(name, data):
    G = by_name(name)
    M, _ = burnside_green_functor(G)
    H = data.draw(st.sampled_from(G.lattice))
    K = data.draw(st.sampled_from(G.lattice))
    X, Y = transitive_gset(G, H), transitive_gset(G, K)
    assert extend_to_gset(M, disjoint_union(X, Y)).rank == M.rank(H) + M.rank(K)
    # the rank of M(G/H x G/K) sums over the double cosets
    dc = G.double_cosets(H, K)
    assert extend_to_gset(M, product(X, Y)).rank == sum(M.rank(d.intersection) for d in dc)
