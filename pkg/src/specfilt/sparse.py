"""Compressed sparse row matrices.

The layout is the classic CSR triple (row_offsets, col_indices, values) with
int64 indices and float64 values. Matrices are canonicalized on construction:
column indices strictly increasing within each row, duplicate entries summed
(or max-merged when requested), explicit zeros pruned. Instances are
immutable after construction and safe to share across threads.
"""

import numpy as np

from . import _kernels


class SparseMatrix:
    """Immutable CSR matrix with float64 values."""

    __slots__ = ("n_rows", "n_cols", "row_offsets", "col_indices", "values")

    def __init__(self, n_rows, n_cols, row_offsets, col_indices, values,
                 prune=True, validate=True):
        self.n_rows = int(n_rows)
        self.n_cols = int(n_cols)
        row_offsets = np.asarray(row_offsets, dtype=np.int64)
        col_indices = np.asarray(col_indices, dtype=np.int64)
        values = np.asarray(values, dtype=np.float64)
        if prune and values.size and np.any(values == 0.0):
            keep = values != 0.0
            rows = np.repeat(np.arange(self.n_rows, dtype=np.int64),
                             np.diff(row_offsets))
            counts = np.bincount(rows[keep], minlength=self.n_rows)
            row_offsets = np.zeros(self.n_rows + 1, dtype=np.int64)
            np.cumsum(counts, out=row_offsets[1:])
            col_indices = col_indices[keep]
            values = values[keep]
        if validate:
            self._validate(row_offsets, col_indices, values)
        for arr in (row_offsets, col_indices, values):
            arr.flags.writeable = False
        self.row_offsets = row_offsets
        self.col_indices = col_indices
        self.values = values

    def _validate(self, row_offsets, col_indices, values):
        if row_offsets.shape != (self.n_rows + 1,):
            raise ValueError("row_offsets must have length n_rows + 1")
        if row_offsets[0] != 0 or row_offsets[-1] != col_indices.size:
            raise ValueError("row_offsets must start at 0 and end at nnz")
        if np.any(np.diff(row_offsets) < 0):
            raise ValueError("row_offsets must be monotone non-decreasing")
        if col_indices.size != values.size:
            raise ValueError("col_indices and values length mismatch")
        if col_indices.size:
            if col_indices.min() < 0 or col_indices.max() >= self.n_cols:
                raise ValueError("column index out of range")
            # strictly increasing within each row
            diffs = np.diff(col_indices)
            row_start = np.zeros(col_indices.size, dtype=bool)
            row_start[row_offsets[1:-1]] = True
            if np.any(diffs[~row_start[1:]] <= 0):
                raise ValueError("column indices must strictly increase within rows")

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @classmethod
    def from_coo(cls, n_rows, n_cols, rows, cols, vals, dedupe="sum"):
        """Build from coordinate triplets; duplicates are summed or max-merged."""
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        vals = np.asarray(vals, dtype=np.float64)
        if rows.size:
            if rows.min() < 0 or rows.max() >= n_rows:
                raise ValueError("row index out of range")
            if cols.min() < 0 or cols.max() >= n_cols:
                raise ValueError("column index out of range")
        order = np.lexsort((cols, rows))
        rows, cols, vals = rows[order], cols[order], vals[order]
        if rows.size:
            first = np.empty(rows.size, dtype=bool)
            first[0] = True
            np.logical_or(rows[1:] != rows[:-1], cols[1:] != cols[:-1],
                          out=first[1:])
            starts = np.flatnonzero(first)
            if dedupe == "sum":
                vals = np.add.reduceat(vals, starts)
            elif dedupe == "max":
                vals = np.maximum.reduceat(vals, starts)
            else:
                raise ValueError(f"unknown dedupe mode {dedupe!r}")
            rows, cols = rows[starts], cols[starts]
        offsets = np.zeros(n_rows + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=n_rows), out=offsets[1:])
        return cls(n_rows, n_cols, offsets, cols, vals, validate=False)

    @classmethod
    def from_dense(cls, array, tol=0.0):
        array = np.asarray(array, dtype=np.float64)
        if array.ndim != 2:
            raise ValueError("expected a 2-d array")
        rows, cols = np.nonzero(np.abs(array) > tol)
        return cls.from_coo(array.shape[0], array.shape[1],
                            rows, cols, array[rows, cols])

    @classmethod
    def identity(cls, n):
        idx = np.arange(n, dtype=np.int64)
        offsets = np.arange(n + 1, dtype=np.int64)
        return cls(n, n, offsets, idx, np.ones(n), validate=False)

    @classmethod
    def diag(cls, values):
        values = np.asarray(values, dtype=np.float64)
        n = values.size
        offsets = np.arange(n + 1, dtype=np.int64)
        return cls(n, n, offsets, np.arange(n, dtype=np.int64), values.copy(),
                   validate=False)

    # ------------------------------------------------------------------
    # queries
    # ------------------------------------------------------------------

    @property
    def nnz(self):
        return int(self.values.size)

    @property
    def shape(self):
        return (self.n_rows, self.n_cols)

    def to_dense(self):
        out = np.zeros((self.n_rows, self.n_cols))
        rows = np.repeat(np.arange(self.n_rows, dtype=np.int64),
                         np.diff(self.row_offsets))
        out[rows, self.col_indices] = self.values
        return out

    def diagonal(self):
        out = np.zeros(min(self.n_rows, self.n_cols))
        rows = np.repeat(np.arange(self.n_rows, dtype=np.int64),
                         np.diff(self.row_offsets))
        on_diag = rows == self.col_indices
        out[rows[on_diag]] = self.values[on_diag]
        return out

    def transpose(self):
        rows = np.repeat(np.arange(self.n_rows, dtype=np.int64),
                         np.diff(self.row_offsets))
        return SparseMatrix.from_coo(self.n_cols, self.n_rows,
                                     self.col_indices, rows, self.values)

    def symmetry_defect(self):
        """max |A - A^T|, zero for exactly symmetric matrices."""
        if self.n_rows != self.n_cols:
            raise ValueError("symmetry is defined for square matrices only")
        diff = self.add(self.transpose(), 1.0, -1.0)
        return float(np.max(np.abs(diff.values))) if diff.nnz else 0.0

    def is_symmetric(self, tol=0.0):
        return self.symmetry_defect() <= tol

    # ------------------------------------------------------------------
    # algebra (delegated to the selected kernel backend)
    # ------------------------------------------------------------------

    def matvec(self, x):
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.n_cols,):
            raise ValueError(f"vector length {x.shape} does not match {self.n_cols}")
        return _kernels.matvec(self.n_rows, self.row_offsets, self.col_indices,
                               self.values, np.ascontiguousarray(x))

    def matmat(self, B):
        B = np.ascontiguousarray(B, dtype=np.float64)
        if B.ndim != 2 or B.shape[0] != self.n_cols:
            raise ValueError(f"operand shape {B.shape} does not match {self.shape}")
        return _kernels.matmat(self.n_rows, self.row_offsets, self.col_indices,
                               self.values, B)

    def spmm(self, other):
        if not isinstance(other, SparseMatrix):
            raise TypeError("spmm expects a SparseMatrix")
        if other.n_rows != self.n_cols:
            raise ValueError("inner dimensions do not match")
        offsets, cols, vals = _kernels.spmm(
            self.n_rows, self.row_offsets, self.col_indices, self.values,
            other.row_offsets, other.col_indices, other.values)
        return SparseMatrix(self.n_rows, other.n_cols, offsets, cols, vals,
                            validate=False)

    def add(self, other, alpha=1.0, beta=1.0):
        """alpha * self + beta * other."""
        if self.shape != other.shape:
            raise ValueError("shapes do not match")
        offsets, cols, vals = _kernels.add(
            self.n_rows, float(alpha),
            self.row_offsets, self.col_indices, self.values,
            float(beta),
            other.row_offsets, other.col_indices, other.values)
        return SparseMatrix(self.n_rows, self.n_cols, offsets, cols, vals,
                            validate=False)

    def scale(self, alpha):
        return SparseMatrix(self.n_rows, self.n_cols, self.row_offsets,
                            self.col_indices, alpha * self.values,
                            validate=False)

    def __matmul__(self, other):
        if isinstance(other, SparseMatrix):
            return self.spmm(other)
        other = np.asarray(other)
        if other.ndim == 1:
            return self.matvec(other)
        return self.matmat(other)

    def __repr__(self):
        return (f"SparseMatrix(shape={self.shape}, nnz={self.nnz})")
