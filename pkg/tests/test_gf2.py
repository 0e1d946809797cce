import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermisym.gf2 import (
    DependentRowsError,
    DimensionError,
    Gf2Matrix,
    Gf2Vector,
    SingularMatrixError,
    block,
    complete_to_invertible,
    inverse,
    kernel,
    rank,
    rref,
    same_span,
    span_contains,
    submatrix,
)


@st.composite
def matrices(draw, max_rows=7, max_cols=7):
    nrows = draw(st.integers(1, max_rows))
    ncols = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.integers(0, (1 << ncols) - 1), min_size=nrows, max_size=nrows))
    return Gf2Matrix(nrows, ncols, tuple(rows))


def to_np(m):
    return m.to_array().astype(int)


class TestVector:
    def test_bit_order_and_index(self):
        v = Gf2Vector.from_bits([1, 0, 1, 1])
        assert v.bits == 0b1101
        assert v.to_list() == [1, 0, 1, 1]
        assert v.to_index() == 0b1011
        assert Gf2Vector.from_index(4, 0b1011) == v
        assert str(v) == "1011"

    def test_arithmetic(self):
        a = Gf2Vector.from_bits([1, 1, 0])
        b = Gf2Vector.from_bits([0, 1, 1])
        assert (a + b).to_list() == [1, 0, 1]
        assert a.dot(b) == 1
        assert a.weight() == 2
        assert a.support() == [0, 1]

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            Gf2Vector.zeros(2) + Gf2Vector.zeros(3)

    def test_bits_must_fit(self):
        with pytest.raises(DimensionError):
            Gf2Vector(2, 0b100)


class TestMatrix:
    def test_from_rows_roundtrip(self):
        a = [[1, 0, 1], [0, 1, 1]]
        m = Gf2Matrix.from_rows(a)
        assert m.shape == (2, 3)
        assert m[0, 2] == 1 and m[1, 0] == 0
        np.testing.assert_array_equal(m.to_array(), a)

    @given(matrices(), st.data())
    def test_product_matches_numpy(self, a, data):
        ncols = data.draw(st.integers(1, 6))
        rows = data.draw(st.lists(st.integers(0, (1 << ncols) - 1), min_size=a.ncols, max_size=a.ncols))
        b = Gf2Matrix(a.ncols, ncols, tuple(rows))
        np.testing.assert_array_equal(to_np(a @ b), to_np(a) @ to_np(b) % 2)

    @given(matrices())
    def test_transpose_involution(self, m):
        assert m.T.T == m
        np.testing.assert_array_equal(to_np(m.T), to_np(m).T)

    def test_block_and_submatrix(self):
        i2 = Gf2Matrix.identity(2)
        z = Gf2Matrix.zeros(2, 2)
        m = block([[i2, z], [z, i2]])
        assert m.is_identity()
        assert submatrix(m, [2, 3], range(2, 4)).is_identity()
        with pytest.raises(DimensionError):
            block([[i2, Gf2Matrix.zeros(3, 1)]])


@given(matrices())
def test_rref_is_reduced_and_spans(m):
    r, pivots = rref(m)
    assert r.nrows == len(pivots) == rank(m)
    for i, p in enumerate(pivots):
        assert r.column(p) == Gf2Vector.unit(r.nrows, i)
    assert pivots == sorted(pivots)
    assert same_span([m.row(i) for i in range(m.nrows)], [r.row(i) for i in range(r.nrows)], m.ncols)


@given(matrices(max_rows=6, max_cols=6))
def test_kernel_against_exhaustive_search(m):
    basis = kernel(m)
    solutions = [
        Gf2Vector.from_bits(x) for x in itertools.product((0, 1), repeat=m.ncols)
        if m.matvec(Gf2Vector.from_bits(x)).is_zero()
    ]
    assert len(solutions) == 2 ** len(basis)
    assert len(basis) + rank(m) == m.ncols
    for v in basis:
        assert m.matvec(v).is_zero()
    for x in solutions:
        assert span_contains(basis, x)


def test_kernel_canonical_form():
    # x0 + x2 = 0, x1 = 0: free column 2 gives (1, 0, 1); free column 3 gives e3
    m = Gf2Matrix.from_rows([[1, 0, 1, 0], [0, 1, 0, 0]])
    assert [v.to_list() for v in kernel(m)] == [[1, 0, 1, 0], [0, 0, 0, 1]]


def test_kernel_of_full_rank_is_empty():
    assert kernel(Gf2Matrix.identity(5)) == []


@given(st.integers(1, 8), st.data())
@settings(max_examples=60)
def test_inverse(n, data):
    rows = data.draw(st.lists(st.integers(0, (1 << n) - 1), min_size=n, max_size=n))
    m = Gf2Matrix(n, n, tuple(rows))
    if rank(m) < n:
        with pytest.raises(SingularMatrixError):
            inverse(m)
    else:
        inv = inverse(m)
        assert (m @ inv).is_identity() and (inv @ m).is_identity()


def test_inverse_non_square():
    with pytest.raises(DimensionError):
        inverse(Gf2Matrix.zeros(2, 3))


def test_completion_uses_highest_unit_vectors_first():
    rows = [Gf2Vector.from_bits(b) for b in ([1, 1, 0, 0], [0, 1, 0, 1], [0, 0, 1, 1])]
    a = complete_to_invertible(rows, 4)
    assert a.to_array().tolist() == [[1, 1, 0, 0], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]]


@given(st.integers(1, 7), st.data())
def test_completion_is_invertible_and_keeps_rows(n, data):
    pool = data.draw(st.lists(st.integers(1, (1 << n) - 1), max_size=n))
    rows = []
    for x in pool:
        v = Gf2Vector(n, x)
        if not span_contains(rows, v):
            rows.append(v)
    a = complete_to_invertible(rows, n)
    assert rank(a) == n
    assert [a.row(i) for i in range(len(rows))] == rows


def test_completion_rejects_dependent_rows():
    v = Gf2Vector.from_bits([1, 1, 0])
    with pytest.raises(DependentRowsError):
        complete_to_invertible([v, v], 3)


def test_same_span_distinguishes():
    a = [Gf2Vector.from_bits([1, 1, 0]), Gf2Vector.from_bits([0, 1, 1])]
    b = [Gf2Vector.from_bits([1, 0, 1]), Gf2Vector.from_bits([1, 1, 0])]
    c = [Gf2Vector.from_bits([1, 0, 0])]
    assert same_span(a, b, 3)
    assert not same_span(a, c, 3)
