from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from greenkit.errors import InputError
from greenkit.exactla import GF, QQ, CoordinateSystem, Field, Matrix, flip, hstack, vstack


def frac_rank(rows):
    """Textbook elimination on Fractions, independent of the package."""
    a = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(a[0]) if a else 0
    while rank < len(a) and col < ncols:
        piv = next((i for i in range(rank, len(a)) if a[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][col] != 0:
                f = a[i][col] / a[rank][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
        col += 1
    return rank


def leibniz_det(rows):
    n = len(rows)
    total = Fraction(0)
    for p in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j]:
                    sign = -sign
        term = Fraction(sign)
        for i in range(n):
            term *= rows[i][p[i]]
        total += term
    return total


small_ints = st.integers(-6, 6)


def int_matrices(max_r=5, max_c=5):
    return st.integers(1, max_r).flatmap(
        lambda r: st.integers(1, max_c).flatmap(
            lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r)))


def square(n_max=4):
    return st.integers(1, n_max).flatmap(
        lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n))


def test_field_parsing():
    assert Field.parse("q") == QQ
    assert Field.parse("fp:5") == GF(5)
    for bad in ("fp:4", "fp:x", "r", "fp:1"):
        with pytest.raises(InputError):
            Field.parse(bad)


def test_fractions_normalized():
    m = Matrix.from_rows([[Fraction(1, 2), Fraction(2, 4)], [3, Fraction(-6, 4)]])
    assert m.den == 2
    assert m.to_strings() == [["1/2", "1/2"], ["3", "-3/2"]]


def test_fp_reduction():
    m = Matrix.from_rows([[7, -1], [5, 10]], GF(5))
    assert m.to_strings() == [["2", "4"], ["0", "0"]]
    assert m.rank() == 1


def test_identity_and_zero_sizes():
    assert Matrix.identity(3).is_identity()
    assert Matrix.zeros(0, 3).shape == (0, 3)
    assert Matrix.zeros(3, 0).kernel().shape == (0, 0)
    assert Matrix.zeros(2, 3).kernel().cols == 3


def test_large_entries_stay_exact():
    big = Matrix.from_rows([[2**40, 1], [1, 2**40]])
    sq = big @ big
    assert sq.entry(0, 0) == 2**80 + 1
    assert big.det() == 2**80 - 1


def test_permutation_and_flip():
    p = Matrix.permutation([2, 0, 1])
    e0 = Matrix.from_rows([[1], [0], [0]])
    assert (p @ e0).to_strings() == [["0"], ["0"], ["1"]]
    f = flip(2, 3)
    a = Matrix.from_rows([[1], [2]])
    b = Matrix.from_rows([[3], [4], [5]])
    assert f @ a.kron(b) == b.kron(a)


def test_solve_inconsistent_returns_none():
    a = Matrix.from_rows([[1, 1], [2, 2]])
    assert a.solve(Matrix.from_rows([[1], [3]])) is None
    x = a.solve(Matrix.from_rows([[1], [2]]))
    assert a @ x == Matrix.from_rows([[1], [2]])


def test_singular_inverse_raises():
    with pytest.raises(InputError):
        Matrix.from_rows([[1, 2], [2, 4]]).inverse()


def test_coordinates_reject_outside_span():
    basis = Matrix.from_rows([[1, 0], [0, 1], [1, 1]])
    cs = CoordinateSystem(basis)
    v = Matrix.from_rows([[2], [3], [5]])
    assert (basis @ cs.coords(v)) == v
    with pytest.raises(InputError):
        cs.coords(Matrix.from_rows([[1], [0], [0]]))


def test_field_mismatch_rejected():
    with pytest.raises(InputError):
        Matrix.identity(2) @ Matrix.identity(2, GF(3))


@given(int_matrices())
def test_rank_matches_fraction_oracle(rows):
    m = Matrix.from_rows(rows)
    assert m.rank() == frac_rank(rows)


@given(int_matrices())
def test_rank_nullity(rows):
    m = Matrix.from_rows(rows)
    k = m.kernel()
    assert k.cols + m.rank() == m.cols
    assert (m @ k).is_zero()
    assert k.rank() == k.cols


@given(int_matrices(), st.sampled_from([2, 3, 5, 7]))
def test_rank_nullity_mod_p(rows, p):
    m = Matrix.from_rows(rows, GF(p))
    k = m.kernel()
    assert k.cols + m.rank() == m.cols
    assert (m @ k).is_zero()


@given(int_matrices())
def test_image_spans_columns(rows):
    m = Matrix.from_rows(rows)
    im = m.image()
    assert im.cols == m.rank()
    assert hstack([im, m]).rank() == im.cols


@given(square())
def test_det_matches_leibniz(rows):
    m = Matrix.from_rows(rows)
    assert m.det() == leibniz_det(rows)
    if m.det() != 0:
        inv = m.inverse()
        assert (m @ inv).is_identity() and (inv @ m).is_identity()
    else:
        assert not m.is_invertible()


@given(square(3), square(3), square(3))
def test_product_associative_and_distributive(a, b, c):
    n = min(len(a), len(b), len(c))
    A, B, C = (Matrix.from_rows([r[:n] for r in x[:n]]) for x in (a, b, c))
    assert (A @ B) @ C == A @ (B @ C)
    assert A @ (B + C) == A @ B + A @ C
    assert (A @ B).T == B.T @ A.T


@given(square(3), square(3))
def test_kron_mixed_product(a, b):
    A, B = Matrix.from_rows(a), Matrix.from_rows(b)
    C, D = A.T + A, B.T
    assert A.kron(B) @ C.kron(D) == (A @ C).kron(B @ D)


@given(int_matrices(4, 4), st.sampled_from([2, 3, 5]))
def test_reduction_mod_p_is_a_ring_map(rows, p):
    m = Matrix.from_rows(rows)
    mt = m @ m.T
    assert mt.to_field(GF(p)) == m.to_field(GF(p)) @ m.T.to_field(GF(p))


@given(int_matrices(4, 3), st.lists(small_ints, min_size=4, max_size=4))
def test_solve_round_trip(rows, x):
    a = Matrix.from_rows(rows)
    xv = Matrix.from_rows([[v] for v in x[:a.cols]])
    b = a @ xv
    sol = a.solve(b)
    assert sol is not None and a @ sol == b


@given(int_matrices(3, 3), int_matrices(3, 3))
def test_stacking_shapes(a, b):
    A, B = Matrix.from_rows(a), Matrix.from_rows(b)
    if A.cols == B.cols:
        v = vstack([A, B])
        assert v.shape == (A.rows + B.rows, A.cols)
        assert v[:A.rows, :] == A


def test_int64_overflow_escalates():
    a = Matrix(np.full((2, 2), 2**40, dtype=np.int64))
    assert (a @ a).entry(0, 0) == 2 * 2**80
