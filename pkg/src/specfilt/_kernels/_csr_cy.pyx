# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled CSR kernels: matvec, CSR @ dense, CSR @ CSR and a*A + b*B.

Serial loops with a fixed accumulation order (ascending column index of the
left operand) so results are reproducible run to run.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def matvec(Py_ssize_t n_rows, const cnp.int64_t[::1] indptr, const cnp.int64_t[::1] indices,
           const double[::1] data, const double[::1] x):
    out_arr = np.zeros(n_rows)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, jj
    cdef double acc
    for i in range(n_rows):
        acc = 0.0
        for jj in range(indptr[i], indptr[i + 1]):
            acc += data[jj] * x[indices[jj]]
        out[i] = acc
    return out_arr


def matmat(Py_ssize_t n_rows, const cnp.int64_t[::1] indptr, const cnp.int64_t[::1] indices,
           const double[::1] data, const double[:, ::1] B):
    cdef Py_ssize_t width = B.shape[1]
    out_arr = np.zeros((n_rows, width))
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, jj, c, col
    cdef double v
    for i in range(n_rows):
        for jj in range(indptr[i], indptr[i + 1]):
            col = indices[jj]
            v = data[jj]
            for c in range(width):
                out[i, c] += v * B[col, c]
    return out_arr


def spmm(Py_ssize_t n_rows,
         const cnp.int64_t[::1] a_indptr, const cnp.int64_t[::1] a_indices, const double[::1] a_data,
         const cnp.int64_t[::1] b_indptr, const cnp.int64_t[::1] b_indices, const double[::1] b_data):
    cdef Py_ssize_t n_cols = 0
    if b_indices.shape[0] > 0:
        n_cols = np.max(np.asarray(b_indices)) + 1

    sums_arr = np.zeros(n_cols)
    mark_arr = np.full(n_cols, -1, dtype=np.int64)
    touched_arr = np.empty(n_cols, dtype=np.int64)
    cdef double[::1] sums = sums_arr
    cdef cnp.int64_t[::1] mark = mark_arr
    cdef cnp.int64_t[::1] touched = touched_arr

    out_indptr_arr = np.zeros(n_rows + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] out_indptr = out_indptr_arr

    cdef Py_ssize_t i, jj, kk, col, n_touch, nnz
    cdef double av

    # symbolic pass: count distinct columns per output row
    nnz = 0
    for i in range(n_rows):
        n_touch = 0
        for jj in range(a_indptr[i], a_indptr[i + 1]):
            col = a_indices[jj]
            for kk in range(b_indptr[col], b_indptr[col + 1]):
                if mark[b_indices[kk]] != i:
                    mark[b_indices[kk]] = i
                    n_touch += 1
        nnz += n_touch
        out_indptr[i + 1] = nnz

    out_indices_arr = np.empty(nnz, dtype=np.int64)
    out_data_arr = np.empty(nnz)
    cdef cnp.int64_t[::1] out_indices = out_indices_arr
    cdef double[::1] out_data = out_data_arr

    mark_arr.fill(-1)

    # numeric pass: accumulate, then emit each row in sorted column order
    cdef Py_ssize_t pos = 0
    for i in range(n_rows):
        n_touch = 0
        for jj in range(a_indptr[i], a_indptr[i + 1]):
            col = a_indices[jj]
            av = a_data[jj]
            for kk in range(b_indptr[col], b_indptr[col + 1]):
                if mark[b_indices[kk]] != i:
                    mark[b_indices[kk]] = i
                    sums[b_indices[kk]] = av * b_data[kk]
                    touched[n_touch] = b_indices[kk]
                    n_touch += 1
                else:
                    sums[b_indices[kk]] += av * b_data[kk]
        touched_arr[:n_touch].sort()
        for kk in range(n_touch):
            out_indices[pos] = touched[kk]
            out_data[pos] = sums[touched[kk]]
            pos += 1

    return out_indptr_arr, out_indices_arr, out_data_arr


def add(Py_ssize_t n_rows, double alpha,
        const cnp.int64_t[::1] a_indptr, const cnp.int64_t[::1] a_indices, const double[::1] a_data,
        double beta,
        const cnp.int64_t[::1] b_indptr, const cnp.int64_t[::1] b_indices, const double[::1] b_data):
    cdef Py_ssize_t max_nnz = a_indices.shape[0] + b_indices.shape[0]
    out_indptr_arr = np.zeros(n_rows + 1, dtype=np.int64)
    out_indices_arr = np.empty(max_nnz, dtype=np.int64)
    out_data_arr = np.empty(max_nnz)
    cdef cnp.int64_t[::1] out_indptr = out_indptr_arr
    cdef cnp.int64_t[::1] out_indices = out_indices_arr
    cdef double[::1] out_data = out_data_arr

    cdef Py_ssize_t i, pa, pb, ea, eb, pos
    pos = 0
    for i in range(n_rows):
        pa = a_indptr[i]
        pb = b_indptr[i]
        ea = a_indptr[i + 1]
        eb = b_indptr[i + 1]
        while pa < ea or pb < eb:
            if pb >= eb or (pa < ea and a_indices[pa] < b_indices[pb]):
                out_indices[pos] = a_indices[pa]
                out_data[pos] = alpha * a_data[pa]
                pa += 1
            elif pa >= ea or b_indices[pb] < a_indices[pa]:
                out_indices[pos] = b_indices[pb]
                out_data[pos] = beta * b_data[pb]
                pb += 1
            else:
                out_indices[pos] = a_indices[pa]
                out_data[pos] = alpha * a_data[pa] + beta * b_data[pb]
                pa += 1
                pb += 1
            pos += 1
        out_indptr[i + 1] = pos

    return out_indptr_arr, out_indices_arr[:pos].copy(), out_data_arr[:pos].copy()
