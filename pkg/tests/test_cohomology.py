import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from greenkit.cohomology import (BarComplex, CohomologySpace, Cochain, cohomology_green_functor, cohomology_group,
                                 conjugation_matrix, cup, restriction_matrix, transfer_matrix)
from greenkit.corpus import by_name
from greenkit.errors import InputError, ResourceError
from greenkit.exactla import Matrix
from greenkit.mackey import check_green_axioms, check_mackey_axioms

SMALL = ["C1", "C2", "C3", "C4", "C2xC2", "S3", "C6", "D4", "Q8"]


def hom_to_fp_dim(G, p):
    """log_p of the number of homomorphisms G -> Z/p, by brute force over generator images."""
    gens = G.generators
    count = 0
    words = G.words
    for images in itertools.product(range(p), repeat=len(gens)):
        vals = [sum(images[k] for k in w) % p for w in words]
        if all(vals[G.mul(a, b)] == (vals[a] + vals[b]) % p for a in range(G.order) for b in range(G.order)):
            count += 1
    d = 0
    while p ** d < count:
        d += 1
    assert p ** d == count
    return d


def test_c2_dimensions(groups):
    assert [cohomology_group(groups("C2"), 2, n).dim for n in range(5)] == [1, 1, 1, 1, 1]


def test_klein_dimensions(groups):
    G = groups("C2xC2")
    assert [cohomology_group(G, 2, n).dim for n in range(3)] == [1, 2, 3]


def test_invertible_order_kills_positive_degrees(groups):
    assert [cohomology_group(groups("C3"), 2, n).dim for n in range(3)] == [1, 0, 0]


@pytest.mark.parametrize("name", SMALL)
@pytest.mark.parametrize("p", [2, 3])
def test_h0_and_h1(name, p):
    G = by_name(name)
    assert cohomology_group(G, p, 0).dim == 1
    assert cohomology_group(G, p, 1).dim == hom_to_fp_dim(G, p)


def test_cup_square_generates_h2(groups):
    G = groups("C2")
    C = BarComplex(G, 2)
    h1, h2 = CohomologySpace(C, 1), CohomologySpace(C, 2)
    x = h1.basis[0].representative
    xx = cup(x, x)
    assert xx.is_cocycle()
    assert not h2.is_coboundary(xx)
    one = C.constant_one()
    assert cup(one, x).values == x.values


def test_cochain_table_is_normalized(groups):
    G = groups("S3")
    C = BarComplex(G, 2)
    u = Cochain(C, 2, Matrix(np.ones((C.dim(2), 1), dtype=np.int64), 1, C.field))
    t = u.table()
    assert t.shape == (6, 6)
    assert t[0].sum() == 0 and t[:, 0].sum() == 0
    assert u(1, 2) == 1 and u(0, 3) == 0
    with pytest.raises(InputError):
        u(1)


def test_bound(groups):
    with pytest.raises(ResourceError):
        cohomology_group(groups("D6"), 2, 4)
    with pytest.raises(ResourceError):
        cohomology_group(groups("C2"), 2, 3, bound=8)


def test_transfer_after_restriction_c3(groups):
    G = groups("C3")
    big, small = BarComplex(G, 2), BarComplex(G.trivial(), 2)
    comp = transfer_matrix(small, big, 0) @ restriction_matrix(big, small, 0)
    assert comp.to_strings() == [["1"]]


@pytest.mark.parametrize("name", SMALL)
def test_d_squared_and_chain_maps(name):
    G = by_name(name)
    p = 2
    for n in range(3):
        big = BarComplex(G, p)
        assert (big.differential(n + 1) @ big.differential(n)).is_zero()
        for H in G.lattice:
            small = BarComplex(H, p)
            r0, r1 = restriction_matrix(big, small, n), restriction_matrix(big, small, n + 1)
            assert small.differential(n) @ r0 == r1 @ big.differential(n)
            t0, t1 = transfer_matrix(small, big, n), transfer_matrix(small, big, n + 1)
            assert big.differential(n) @ t0 == t1 @ small.differential(n)
            for g in G.generators:
                dst = BarComplex(H.conjugate(g), p)
                c0, c1 = conjugation_matrix(small, dst, g, n), conjugation_matrix(small, dst, g, n + 1)
                assert dst.differential(n) @ c0 == c1 @ small.differential(n)


@pytest.mark.parametrize("name", SMALL)
def test_transfer_restriction_is_index(name):
    G = by_name(name)
    M, P, tab = cohomology_green_functor(G, 2, 3)
    for K in G.lattice:
        for H in G.lattice:
            if H.is_subgroup_of(K):
                assert M.ind(H, K) @ M.res(K, H) == M.identity(K).scale(K.order // H.order)


@pytest.mark.parametrize("name,p", [("C2", 2), ("C2xC2", 2), ("S3", 2), ("S3", 3), ("C3", 2), ("D4", 2),
                                    ("Q8", 2), ("C4", 2)])
def test_graded_green_axioms(name, p):
    G = by_name(name)
    M, P, tab = cohomology_green_functor(G, p, 3)
    rep = check_mackey_axioms(M)
    check_green_axioms(M, P, rep)
    assert rep.passed, [c.id for c in rep.failures][:5]
    for H in G.lattice:
        assert M.degrees[H] == tab.degrees(H)


def test_graded_commutative_over_f2(groups):
    from greenkit.exactla import flip
    G = groups("C2xC2")
    M, P, _ = cohomology_green_functor(G, 2, 3)
    for H in G.lattice:
        r = M.rank(H)
        assert P.at(H) @ flip(r, r, P.at(H).field) == P.at(H)


@given(st.sampled_from(["C2", "C3", "C2xC2", "S3", "C4"]), st.integers(0, 2), st.integers(0, 2),
       st.integers(0, 2**31), st.sampled_from([2, 3]))
def test_leibniz_on_random_cochains(name, m, n, seed, p):
    G = by_name(name)
    C = BarComplex(G, p)
    rng = np.random.default_rng(seed)
    u = Cochain(C, m, Matrix(rng.integers(0, p, (C.dim(m), 1)), 1, C.field))
    v = Cochain(C, n, Matrix(rng.integers(0, p, (C.dim(n), 1)), 1, C.field))
    lhs = cup(u, v).d().values
    sign = (-1) ** m
    rhs = cup(u.d(), v).values + cup(u, v.d()).values.scale(sign)
    assert lhs == rhs
