"""Vectorized NumPy implementations of the CSR kernels.

Fallback used when the compiled extension is unavailable. Within every
output row, contributions are accumulated in ascending column order of the
left operand, matching the compiled kernels.

All kernels take raw CSR arrays (int64 indptr/indices, float64 data) and
return plain NumPy arrays; validation and canonicalization live in
``specfilt.sparse``.
"""

import numpy as np


def matvec(n_rows, indptr, indices, data, x):
    if data.size == 0:
        return np.zeros(n_rows)
    prods = data * x[indices]
    rows = np.repeat(np.arange(n_rows, dtype=np.int64), np.diff(indptr))
    return np.bincount(rows, weights=prods, minlength=n_rows)


def matmat(n_rows, indptr, indices, data, B):
    B = np.ascontiguousarray(B, dtype=np.float64)
    out = np.zeros((n_rows, B.shape[1]))
    for i in range(n_rows):
        s, e = indptr[i], indptr[i + 1]
        if e > s:
            out[i] = data[s:e] @ B[indices[s:e]]
    return out


def _concat_ranges(starts, stops):
    """Concatenate the integer ranges [starts[m], stops[m]) into one array."""
    lens = stops - starts
    total = int(lens.sum())
    if total == 0:
        return np.zeros(0, dtype=np.int64), lens
    offsets = np.concatenate(([0], np.cumsum(lens)[:-1]))
    return np.repeat(starts - offsets, lens) + np.arange(total, dtype=np.int64), lens


def _coo_to_csr(n_rows, rows, cols, vals):
    order = np.lexsort((cols, rows))
    rows, cols, vals = rows[order], cols[order], vals[order]
    if rows.size:
        first = np.empty(rows.size, dtype=bool)
        first[0] = True
        np.logical_or(rows[1:] != rows[:-1], cols[1:] != cols[:-1], out=first[1:])
        starts = np.flatnonzero(first)
        vals = np.add.reduceat(vals, starts)
        rows, cols = rows[starts], cols[starts]
    indptr = np.zeros(n_rows + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=n_rows), out=indptr[1:])
    return indptr, cols.astype(np.int64, copy=False), np.asarray(vals, dtype=np.float64)


def spmm(n_rows, a_indptr, a_indices, a_data, b_indptr, b_indices, b_data):
    # expand every entry a_ik against row k of B, then merge duplicate columns
    starts = b_indptr[a_indices]
    stops = b_indptr[a_indices + 1]
    gather, lens = _concat_ranges(starts, stops)
    a_rows = np.repeat(np.arange(n_rows, dtype=np.int64), np.diff(a_indptr))
    rows = np.repeat(a_rows, lens)
    cols = b_indices[gather]
    vals = np.repeat(a_data, lens) * b_data[gather]
    return _coo_to_csr(n_rows, rows, cols, vals)


def add(n_rows, alpha, a_indptr, a_indices, a_data, beta, b_indptr, b_indices, b_data):
    rows_a = np.repeat(np.arange(n_rows, dtype=np.int64), np.diff(a_indptr))
    rows_b = np.repeat(np.arange(n_rows, dtype=np.int64), np.diff(b_indptr))
    rows = np.concatenate([rows_a, rows_b])
    cols = np.concatenate([a_indices, b_indices])
    vals = np.concatenate([alpha * a_data, beta * b_data])
    return _coo_to_csr(n_rows, rows, cols, vals)
