"""Undirected weighted graphs and their Laplacians.

A graph stores its adjacency W as a symmetric CSR matrix with non-negative
weights. The three Laplacian constructions used throughout the package are

    combinatorial      L  = D - W
    normalized         L~ = I - D^{-1/2} W D^{-1/2}
    self-loop variant  L~' of W + I with recomputed degrees

Zero-degree nodes use the convention D_ii^{-1/2} = 0, which keeps the
normalized Laplacian finite (and gives it a 1 on the diagonal there).
"""

import numpy as np

from .sparse import SparseMatrix


class Graph:
    """Undirected weighted graph over nodes 0..n-1."""

    __slots__ = ("n", "adjacency")

    def __init__(self, adjacency, validate=True):
        if adjacency.n_rows != adjacency.n_cols:
            raise ValueError("adjacency must be square")
        if validate:
            if adjacency.values.size and adjacency.values.min() < 0:
                raise ValueError("edge weights must be non-negative")
            if not adjacency.is_symmetric(tol=0.0):
                raise ValueError("adjacency must be exactly symmetric")
        self.n = adjacency.n_rows
        self.adjacency = adjacency

    @classmethod
    def from_edges(cls, n, edges, symmetrize=True, dedupe="max"):
        """Build from (src, dst, weight) triples.

        With ``symmetrize`` each edge is mirrored; duplicate entries (either
        direction) keep the maximum weight so the result is order-independent.
        """
        if edges:
            src = np.asarray([e[0] for e in edges], dtype=np.int64)
            dst = np.asarray([e[1] for e in edges], dtype=np.int64)
            w = np.asarray([e[2] for e in edges], dtype=np.float64)
        else:
            src = dst = np.zeros(0, dtype=np.int64)
            w = np.zeros(0)
        if symmetrize:
            off = src != dst
            src, dst, w = (np.concatenate([src, dst[off]]),
                           np.concatenate([dst, src[off]]),
                           np.concatenate([w, w[off]]))
        return cls(SparseMatrix.from_coo(n, n, src, dst, w, dedupe=dedupe))

    @classmethod
    def from_dense(cls, W):
        return cls(SparseMatrix.from_dense(W))


def degree_vector(g):
    """Weighted degrees d_i = sum_j w_ij."""
    return g.adjacency.matvec(np.ones(g.n))


def laplacian(g):
    """Combinatorial Laplacian L = D - W."""
    D = SparseMatrix.diag(degree_vector(g))
    return D.add(g.adjacency, 1.0, -1.0)


def _normalized_from_adjacency(adj):
    deg = adj.matvec(np.ones(adj.n_rows))
    with np.errstate(divide="ignore"):
        dis = np.where(deg > 0, 1.0 / np.sqrt(np.where(deg > 0, deg, 1.0)), 0.0)
    rows = np.repeat(np.arange(adj.n_rows, dtype=np.int64),
                     np.diff(adj.row_offsets))
    scaled = SparseMatrix(adj.n_rows, adj.n_cols, adj.row_offsets,
                          adj.col_indices,
                          adj.values * dis[rows] * dis[adj.col_indices],
                          validate=False)
    return SparseMatrix.identity(adj.n_rows).add(scaled, 1.0, -1.0)


def normalized_laplacian(g):
    """Normalized Laplacian I - D^{-1/2} W D^{-1/2}; spectrum within [0, 2]."""
    return _normalized_from_adjacency(g.adjacency)


def renormalize(g):
    """Normalized Laplacian of the self-loop graph W + I, degrees recomputed.

    Adding self-loops shrinks the top of the spectrum (checked empirically in
    the test suite rather than assumed).
    """
    augmented = g.adjacency.add(SparseMatrix.identity(g.n), 1.0, 1.0)
    return _normalized_from_adjacency(augmented)


def shortest_path_hops(g, source):
    """BFS hop counts from ``source``; unreachable nodes get -1."""
    adj = g.adjacency
    hops = np.full(g.n, -1, dtype=np.int64)
    hops[source] = 0
    frontier = [source]
    level = 0
    while frontier:
        level += 1
        nxt = []
        for u in frontier:
            s, e = adj.row_offsets[u], adj.row_offsets[u + 1]
            for v in adj.col_indices[s:e]:
                if hops[v] < 0:
                    hops[v] = level
                    nxt.append(int(v))
        frontier = nxt
    return hops
