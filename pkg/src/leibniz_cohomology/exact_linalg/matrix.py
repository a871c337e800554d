"""Immutable sparse matrices over the rationals.

Entries are held as integer numerators over one shared positive denominator,
so the integer part can be handed straight to the elimination kernels.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

_INT64_SAFE = 2**62


class DimensionMismatch(ValueError):
    """Raised when operand shapes are incompatible."""


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _as_numerator_array(values) -> np.ndarray:
    vals = [int(v) for v in values]
    if all(-_INT64_SAFE < v < _INT64_SAFE for v in vals):
        return np.asarray(vals, dtype=np.int64)
    out = np.empty(len(vals), dtype=object)
    out[:] = vals
    return out


class SparseRationalMatrix:
    """Sparse ``nrows x ncols`` matrix with exact rational entries.

    Storage is COO in column-major order (sorted by column, then row) with no
    explicit zeros and at most one entry per position.  Instances are
    immutable; every operation returns a new matrix.
    """

    __slots__ = ("nrows", "ncols", "_rows", "_cols", "_num", "_den")

    def __init__(self, nrows, ncols, rows, cols, nums, den=1, *, _canonical=False):
        nrows, ncols = int(nrows), int(ncols)
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.nrows = nrows
        self.ncols = ncols
        rows = np.asarray(rows, dtype=np.int64).reshape(-1)
        cols = np.asarray(cols, dtype=np.int64).reshape(-1)
        if not isinstance(nums, np.ndarray):
            nums = _as_numerator_array(nums)
        if not (len(rows) == len(cols) == len(nums)):
            raise ValueError("rows, cols and values must have equal length")
        den = int(den)
        if den <= 0:
            raise ValueError("denominator must be positive")
        if len(rows) and not _canonical:
            if rows.min() < 0 or rows.max() >= nrows or cols.min() < 0 or cols.max() >= ncols:
                raise IndexError("entry index out of range")
            rows, cols, nums = _canonicalize(rows, cols, nums, nrows)
        if len(nums):
            g = den
            for v in (np.unique(np.abs(nums)) if nums.dtype != object else set(abs(int(x)) for x in nums)):
                g = gcd(g, int(v))
                if g == 1:
                    break
            if g > 1:
                nums = nums // g
                den //= g
        else:
            den = 1
        self._rows, self._cols, self._num, self._den = rows, cols, nums, den
        for arr in (self._rows, self._cols):
            arr.setflags(write=False)
        if self._num.dtype != object:
            self._num.setflags(write=False)

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable) -> "SparseRationalMatrix":
        """Build from ``(row, col, value)`` triples; duplicates are summed."""
        rs, cs, fs = [], [], []
        for r, c, v in entries:
            rs.append(int(r))
            cs.append(int(c))
            fs.append(as_fraction(v))
        den = 1
        for f in fs:
            den = _lcm(den, f.denominator)
        nums = [f.numerator * (den // f.denominator) for f in fs]
        return cls(nrows, ncols, rs, cs, _as_numerator_array(nums), den)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "SparseRationalMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        entries = []
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise DimensionMismatch("ragged dense matrix")
            for j, v in enumerate(row):
                f = as_fraction(v)
                if f:
                    entries.append((i, j, f))
        return cls.from_entries(nrows, ncols, entries)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[dict]) -> "SparseRationalMatrix":
        """Build from a list of sparse columns ``{row: value}``."""
        entries = ((r, j, v) for j, col in enumerate(columns) for r, v in col.items())
        return cls.from_entries(nrows, len(columns), entries)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "SparseRationalMatrix":
        return cls(nrows, ncols, [], [], np.zeros(0, dtype=np.int64))

    @classmethod
    def identity(cls, n: int) -> "SparseRationalMatrix":
        idx = np.arange(n, dtype=np.int64)
        return cls(n, n, idx, idx, np.ones(n, dtype=np.int64), _canonical=True)

    # -- basic accessors ----------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def nnz(self) -> int:
        return len(self._num)

    @property
    def denominator(self) -> int:
        return self._den

    def coo(self):
        """Raw ``(rows, cols, numerators, denominator)`` arrays (read-only)."""
        return self._rows, self._cols, self._num, self._den

    def entries(self):
        """Yield ``(row, col, Fraction)`` in column-major order."""
        den = self._den
        for r, c, v in zip(self._rows.tolist(), self._cols.tolist(), self._num.tolist()):
            yield r, c, Fraction(int(v), den)

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for r, c, v in self.entries():
            out[r][c] = v
        return out

    def __getitem__(self, key) -> Fraction:
        r, c = key
        lo = np.searchsorted(self._cols, c, side="left")
        hi = np.searchsorted(self._cols, c, side="right")
        pos = lo + np.searchsorted(self._rows[lo:hi], r)
        if pos < hi and self._rows[pos] == r:
            return Fraction(int(self._num[pos]), self._den)
        return Fraction(0)

    def column(self, j: int) -> dict[int, Fraction]:
        lo = np.searchsorted(self._cols, j, side="left")
        hi = np.searchsorted(self._cols, j, side="right")
        return {
            int(r): Fraction(int(v), self._den)
            for r, v in zip(self._rows[lo:hi].tolist(), self._num[lo:hi].tolist())
        }

    def integer_rows(self) -> list[dict[int, int]]:
        """Rows of ``den * self`` as sparse integer dicts."""
        rows: list[dict[int, int]] = [dict() for _ in range(self.nrows)]
        for r, c, v in zip(self._rows.tolist(), self._cols.tolist(), self._num.tolist()):
            rows[r][c] = int(v)
        return rows

    def csr(self):
        """Row-major ``(indptr, indices, numerators)`` of ``den * self``."""
        order = np.lexsort((self._cols, self._rows))
        indptr = np.zeros(self.nrows + 1, dtype=np.int64)
        np.add.at(indptr, self._rows + 1, 1)
        np.cumsum(indptr, out=indptr)
        return indptr, self._cols[order], self._num[order]

    def fits_int64(self) -> bool:
        return self._num.dtype != object

    # -- arithmetic ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseRationalMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self._den == other._den
            and np.array_equal(self._rows, other._rows)
            and np.array_equal(self._cols, other._cols)
            and [int(v) for v in self._num] == [int(v) for v in other._num]
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return self.nnz == 0

    def __neg__(self) -> "SparseRationalMatrix":
        return SparseRationalMatrix(
            self.nrows, self.ncols, self._rows, self._cols, -self._num, self._den, _canonical=True
        )

    def scale(self, factor) -> "SparseRationalMatrix":
        f = as_fraction(factor)
        if f == 0:
            return SparseRationalMatrix.zeros(self.nrows, self.ncols)
        nums = _as_numerator_array([int(v) * f.numerator for v in self._num])
        return SparseRationalMatrix(
            self.nrows, self.ncols, self._rows, self._cols, nums, self._den * f.denominator, _canonical=True
        )

    def __add__(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        den = _lcm(self._den, other._den)
        a = [int(v) * (den // self._den) for v in self._num]
        b = [int(v) * (den // other._den) for v in other._num]
        return SparseRationalMatrix(
            self.nrows,
            self.ncols,
            np.concatenate([self._rows, other._rows]),
            np.concatenate([self._cols, other._cols]),
            _as_numerator_array(a + b),
            den,
        )

    def __sub__(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        return self + (-other)

    def transpose(self) -> "SparseRationalMatrix":
        return SparseRationalMatrix(self.ncols, self.nrows, self._cols, self._rows, self._num, self._den)

    @property
    def T(self) -> "SparseRationalMatrix":
        return self.transpose()

    def __matmul__(self, other):
        if isinstance(other, SparseRationalMatrix):
            return self.matmul(other)
        return self.matvec(other)

    def matmul(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        den = self._den * other._den
        bound_a = max((abs(int(v)) for v in self._num), default=0)
        bound_b = max((abs(int(v)) for v in other._num), default=0)
        if self.fits_int64() and other.fits_int64() and bound_a * bound_b * max(self.ncols, 1) < _INT64_SAFE:
            import scipy.sparse as sp

            a = sp.csr_matrix((self._num, (self._rows, self._cols)), shape=self.shape, dtype=np.int64)
            b = sp.csr_matrix((other._num, (other._rows, other._cols)), shape=other.shape, dtype=np.int64)
            c = (a @ b).tocoo()
            keep = c.data != 0
            return SparseRationalMatrix(
                self.nrows, other.ncols, c.row[keep], c.col[keep], c.data[keep].astype(np.int64), den
            )
        left = self.integer_rows()
        right = other.integer_rows()
        entries: dict[tuple[int, int], int] = {}
        for i, row in enumerate(left):
            for k, a in row.items():
                for j, b in right[k].items():
                    entries[(i, j)] = entries.get((i, j), 0) + a * b
        items = [(k, v) for k, v in entries.items() if v]
        return SparseRationalMatrix(
            self.nrows,
            other.ncols,
            [k[0] for k, _ in items],
            [k[1] for k, _ in items],
            _as_numerator_array([v for _, v in items]),
            den,
        )

    def matvec(self, vector) -> list[Fraction]:
        """Exact product with a dense vector (sequence) or sparse ``{index: value}``."""
        if isinstance(vector, dict):
            items = [(int(k), as_fraction(v)) for k, v in vector.items()]
            if any(k < 0 or k >= self.ncols for k, _ in items):
                raise DimensionMismatch("sparse vector index out of range")
        else:
            if len(vector) != self.ncols:
                raise DimensionMismatch(f"vector of length {len(vector)} for {self.ncols} columns")
            items = [(k, as_fraction(v)) for k, v in enumerate(vector) if v]
        out = [Fraction(0)] * self.nrows
        for k, v in items:
            for r, a in self.column(k).items():
                out[r] += a * v
        return out

    def select_columns(self, columns: Sequence[int]) -> "SparseRationalMatrix":
        columns = np.asarray(columns, dtype=np.int64)
        remap = np.full(self.ncols, -1, dtype=np.int64)
        remap[columns] = np.arange(len(columns), dtype=np.int64)
        new_cols = remap[self._cols]
        keep = new_cols >= 0
        return SparseRationalMatrix(
            self.nrows, len(columns), self._rows[keep], new_cols[keep], self._num[keep], self._den
        )

    def select_rows(self, rows: Sequence[int]) -> "SparseRationalMatrix":
        return self.transpose().select_columns(rows).transpose()

    @staticmethod
    def hstack(blocks: Sequence["SparseRationalMatrix"]) -> "SparseRationalMatrix":
        if not blocks:
            raise ValueError("nothing to stack")
        nrows = blocks[0].nrows
        if any(b.nrows != nrows for b in blocks):
            raise DimensionMismatch("hstack needs equal row counts")
        den = 1
        for b in blocks:
            den = _lcm(den, b._den)
        rows, cols, nums, off = [], [], [], 0
        for b in blocks:
            rows.append(b._rows)
            cols.append(b._cols + off)
            f = den // b._den
            nums.extend(int(v) * f for v in b._num)
            off += b.ncols
        return SparseRationalMatrix(
            nrows, off, np.concatenate(rows), np.concatenate(cols), _as_numerator_array(nums), den,
            _canonical=True,
        )

    @staticmethod
    def vstack(blocks: Sequence["SparseRationalMatrix"]) -> "SparseRationalMatrix":
        return SparseRationalMatrix.hstack([b.transpose() for b in blocks]).transpose()

    def __repr__(self) -> str:
        return f"SparseRationalMatrix({self.nrows}x{self.ncols}, nnz={self.nnz}, den={self._den})"


def _canonicalize(rows, cols, nums, nrows):
    """Sort column-major, sum duplicates, drop zeros."""
    key = cols * max(nrows, 1) + rows
    order = np.argsort(key, kind="stable")
    key, rows, cols, nums = key[order], rows[order], cols[order], nums[order]
    if len(key) > 1 and np.any(key[1:] == key[:-1]):
        starts = np.flatnonzero(np.concatenate([[True], key[1:] != key[:-1]]))
        if nums.dtype == object:
            summed = np.empty(len(starts), dtype=object)
            bounds = list(starts) + [len(nums)]
            for i in range(len(starts)):
                summed[i] = sum(int(v) for v in nums[bounds[i]:bounds[i + 1]])
        else:
            summed = np.add.reduceat(nums, starts)
        rows, cols, nums = rows[starts], cols[starts], summed
    keep = nums != 0
    if nums.dtype == object:
        keep = np.array([int(v) != 0 for v in nums], dtype=bool)
    return rows[keep].copy(), cols[keep].copy(), nums[keep].copy()
