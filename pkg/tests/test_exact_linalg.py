from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from leibniz_cohomology.exact_linalg import (
    ColumnSpaceReducer,
    DimensionMismatch,
    RankConfig,
    SparseRationalMatrix,
    _backend,
    as_fraction,
    backend_name,
    in_image,
    independent_rows,
    kernel_basis,
    rank,
    relations,
    select_primes,
)

small = st.integers(min_value=-4, max_value=4)


@st.composite
def rational_matrices(draw, max_rows=7, max_cols=7):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    num = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    den = draw(st.sampled_from([1, 1, 2, 3]))
    return [[Fraction(x, den) for x in row] for row in num]


def _sympy_rank(rows) -> int:
    return sympy.Matrix(rows).rank()


def test_as_fraction_accepts_strings_and_ints():
    assert as_fraction("3/6") == Fraction(1, 2)
    assert as_fraction(4) == Fraction(4)


def test_rank_of_known_matrix():
    m = SparseRationalMatrix.from_dense([[1, 2, 3], [2, 4, 6], [0, 1, Fraction(1, 2)]])
    cert = rank(m, "exact")
    assert cert.rank == 2
    assert cert.method == "exact"


def test_zero_and_identity():
    assert rank(SparseRationalMatrix.zeros(4, 5)).rank == 0
    assert rank(SparseRationalMatrix.identity(6), "modular").rank == 6


def test_kernel_and_image_witness():
    m = SparseRationalMatrix.from_dense([[1, 1, 0], [0, 1, 1]])
    kernel = kernel_basis(m, "exact")
    assert len(kernel) == 1
    assert not any(m.matvec(kernel[0]))
    ok, w = in_image(m, [2, 3], "exact")
    assert ok and m.matvec(w) == [2, 3]


def test_not_in_image():
    m = SparseRationalMatrix.from_dense([[1, 0], [1, 0], [0, 0]])
    ok, w = in_image(m, [1, 2, 0], "exact")
    assert not ok and w is None


def test_dimension_mismatch():
    m = SparseRationalMatrix.from_dense([[1, 0], [0, 1]])
    with pytest.raises(DimensionMismatch):
        in_image(m, [1, 2, 3])
    with pytest.raises(DimensionMismatch):
        SparseRationalMatrix.hstack([m, SparseRationalMatrix.zeros(3, 1)])


def test_reducer_kills_columns():
    m = SparseRationalMatrix.from_dense([[1, 2], [3, 4], [5, 6]])
    red = ColumnSpaceReducer(m)
    assert red.rank == 2
    assert red.contains({0: 1, 1: 3, 2: 5})
    assert red.reduce({0: 1}) != {}


def test_relations_finds_dependency():
    vecs = [{0: Fraction(1)}, {1: Fraction(1)}, {0: Fraction(2), 1: Fraction(-1)}]
    rel = relations(vecs)
    assert len(rel) == 1
    y = rel[0]
    assert y[2] != 0 and y[0] == -2 * y[2] and y[1] == y[2]


def test_primes_are_deterministic():
    assert select_primes(4, 7) == select_primes(4, 7)
    assert len(set(select_primes(5))) == 5


def test_backend_is_reported():
    assert backend_name() in ("cython", "python")


@given(rational_matrices())
def test_rank_matches_sympy(rows):
    m = SparseRationalMatrix.from_dense(rows)
    assert rank(m, "exact").rank == _sympy_rank(rows)


@given(rational_matrices())
def test_modular_agrees_with_exact(rows):
    m = SparseRationalMatrix.from_dense(rows)
    cfg = RankConfig(min_primes=3)
    assert rank(m, "modular", cfg).rank == rank(m, "exact").rank


@given(rational_matrices())
def test_rank_nullity(rows):
    m = SparseRationalMatrix.from_dense(rows)
    r = rank(m, "exact").rank
    kernel = kernel_basis(m, "exact")
    assert len(kernel) == m.ncols - r
    for v in kernel:
        assert not any(m.matvec(v))
    assert len(independent_rows(m, "exact")) == r


@given(rational_matrices())
def test_transpose_rank(rows):
    m = SparseRationalMatrix.from_dense(rows)
    assert rank(m.transpose(), "exact").rank == rank(m, "exact").rank


@given(rational_matrices())
def test_python_and_compiled_kernels_agree(rows):
    m = SparseRationalMatrix.from_dense(rows)
    current = _backend.name
    try:
        _backend.use("python")
        slow = (rank(m, "exact").rank, rank(m, "modular").rank)
        if current == "cython":
            _backend.use("cython")
        fast = (rank(m, "exact").rank, rank(m, "modular").rank)
    finally:
        _backend.use(current)
    assert slow == fast
