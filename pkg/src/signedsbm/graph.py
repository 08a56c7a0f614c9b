"""Sparse signed graphs: storage, edge-list I/O and edge/triangle counts."""

from __future__ import annotations

import io
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, TextIO

import numba
import numpy as np
import scipy.sparse as sp

__all__ = [
    "EdgeListError",
    "GraphMoments",
    "SignedGraph",
    "apply_signed",
    "count_moments",
    "count_triangles",
    "format_edge_list",
    "parse_edge_list",
    "read_edge_list",
    "write_edge_list",
]


class EdgeListError(ValueError):
    """Raised for malformed or inconsistent edge-list input."""

    def __init__(self, message: str, lineno: int | None = None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


def _compress(n: int, u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Symmetric CSR (indptr, indices) with sorted rows from undirected pairs."""
    rows = np.concatenate([u, v])
    cols = np.concatenate([v, u])
    order = np.lexsort((cols, rows))
    indices = cols[order].astype(np.int64)
    counts = np.bincount(rows, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, indices


@dataclass(frozen=True, eq=False)
class SignedGraph:
    """Undirected signed graph with entries in {-1, 0, +1}.

    Positive and negative edges are kept in two separate compressed
    neighbour structures (``indptr``/``indices`` pairs, CSR style); each
    row is sorted ascending. Instances are immutable; build them with
    :meth:`from_edges` or :func:`parse_edge_list`.
    """

    n: int
    pos_indptr: np.ndarray
    pos_indices: np.ndarray
    neg_indptr: np.ndarray
    neg_indices: np.ndarray

    def __post_init__(self):
        for arr in (self.pos_indptr, self.pos_indices, self.neg_indptr, self.neg_indices):
            arr.flags.writeable = False

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, int]] | np.ndarray) -> "SignedGraph":
        """Build a graph from ``(u, v, sign)`` triples, each pair listed once."""
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 3)
        if arr.ndim != 2 or arr.shape[1] != 3:
            raise ValueError("edges must be (u, v, sign) triples")
        return cls.from_arrays(n, arr[:, 0], arr[:, 1], arr[:, 2])

    @classmethod
    def from_arrays(cls, n: int, u, v, sign) -> "SignedGraph":
        n = int(n)
        if n < 2:
            raise ValueError(f"need at least 2 nodes, got {n}")
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        sign = np.asarray(sign, dtype=np.int64)
        if not (u.shape == v.shape == sign.shape):
            raise ValueError("u, v and sign must have the same length")
        if u.size:
            if min(u.min(), v.min()) < 0 or max(u.max(), v.max()) >= n:
                raise ValueError("node id out of range")
            if np.any(u == v):
                raise ValueError("self-loops are not allowed")
            if np.any((sign != 1) & (sign != -1)):
                raise ValueError("edge signs must be +1 or -1")
            lo, hi = np.minimum(u, v), np.maximum(u, v)
            key = lo * n + hi
            if np.unique(key).size != key.size:
                raise ValueError("duplicate edge")
        else:
            lo = hi = u
        pos = sign > 0
        neg = ~pos
        return cls(n, *_compress(n, lo[pos], hi[pos]), *_compress(n, lo[neg], hi[neg]))

    @classmethod
    def empty(cls, n: int) -> "SignedGraph":
        return cls.from_edges(n, [])

    def pos_adj(self, i: int) -> np.ndarray:
        return self.pos_indices[self.pos_indptr[i]:self.pos_indptr[i + 1]]

    def neg_adj(self, i: int) -> np.ndarray:
        return self.neg_indices[self.neg_indptr[i]:self.neg_indptr[i + 1]]

    @property
    def n_pos(self) -> int:
        return int(self.pos_indices.size // 2)

    @property
    def n_neg(self) -> int:
        return int(self.neg_indices.size // 2)

    def _csr(self, indptr: np.ndarray, indices: np.ndarray, data=None) -> sp.csr_array:
        idx_t = np.int32 if indices.size < 2 ** 31 and self.n < 2 ** 31 else np.int64
        if data is None:
            data = np.ones(indices.size)
        return sp.csr_array((data, indices.astype(idx_t), indptr.astype(idx_t)),
                            shape=(self.n, self.n))

    @cached_property
    def a_pos(self) -> sp.csr_array:
        """A+ as a float CSR array."""
        return self._csr(self.pos_indptr, self.pos_indices)

    @cached_property
    def a_neg(self) -> sp.csr_array:
        return self._csr(self.neg_indptr, self.neg_indices)

    def weighted(self, xi: float) -> sp.csr_array:
        """Sparse ``A+ - xi A-`` (same sparsity as the union of both layers)."""
        m = (self.a_pos - xi * self.a_neg) if xi != 0 else self.a_pos.copy()
        m.sort_indices()
        return m

    def edges(self) -> np.ndarray:
        """All edges as an ``(m, 3)`` array of ``(u, v, sign)`` with ``u < v``,
        sorted lexicographically by ``(u, v)``."""
        parts = []
        for indptr, indices, s in ((self.pos_indptr, self.pos_indices, 1),
                                   (self.neg_indptr, self.neg_indices, -1)):
            rows = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(indptr))
            keep = rows < indices
            parts.append(np.column_stack([rows[keep], indices[keep],
                                          np.full(keep.sum(), s, dtype=np.int64)]))
        out = np.concatenate(parts)
        return out[np.lexsort((out[:, 1], out[:, 0]))]

    def to_dense(self) -> np.ndarray:
        """Dense signed adjacency A = A+ - A-. Only meant for small graphs."""
        return (self.a_pos - self.a_neg).toarray()

    def audit(self) -> list[str]:
        """Return a list of violated structural invariants (empty when valid)."""
        problems = []
        for name, indptr, indices in (("pos", self.pos_indptr, self.pos_indices),
                                      ("neg", self.neg_indptr, self.neg_indices)):
            if indptr.size != self.n + 1 or indptr[0] != 0 or indptr[-1] != indices.size:
                problems.append(f"{name}: bad indptr")
                continue
            if np.any(np.diff(indptr) < 0):
                problems.append(f"{name}: indptr not monotone")
                continue
            if indices.size and (indices.min() < 0 or indices.max() >= self.n):
                problems.append(f"{name}: index out of range")
                continue
            rows = np.repeat(np.arange(self.n), np.diff(indptr))
            if np.any(rows == indices):
                problems.append(f"{name}: self-loop")
            same_row = rows[1:] == rows[:-1]
            if np.any(same_row & (indices[1:] <= indices[:-1])):
                problems.append(f"{name}: row not strictly increasing")
            m = sp.csr_array((np.ones(indices.size), indices, indptr), shape=(self.n, self.n))
            if (m != m.T).nnz:
                problems.append(f"{name}: not symmetric")
        if not problems and self.a_pos.multiply(self.a_neg).nnz:
            problems.append("positive and negative edges overlap")
        return problems


@dataclass(frozen=True)
class GraphMoments:
    """Edge counts (N+, N-) and triangle counts (T+, T-) of the two sign layers."""

    n_pos: int
    n_neg: int
    t_pos: int
    t_neg: int


@numba.njit(cache=True)
def _forward_triangles(indptr, upper, indices):
    # Each triangle u < v < w is counted once, from edge (u, v): the upper
    # neighbours of u are marked, then the upper neighbours of v are probed.
    n = indptr.size - 1
    mark = np.zeros(n, dtype=np.uint8)
    total = 0
    for u in range(n):
        lo, hi = upper[u], indptr[u + 1]
        for k in range(lo, hi):
            mark[indices[k]] = 1
        for k in range(lo, hi):
            v = indices[k]
            for j in range(upper[v], indptr[v + 1]):
                total += mark[indices[j]]
        for k in range(lo, hi):
            mark[indices[k]] = 0
    return total


def count_triangles(indptr: np.ndarray, indices: np.ndarray) -> int:
    """Number of triangles in an undirected graph given sorted CSR rows."""
    indptr = np.ascontiguousarray(indptr, dtype=np.int64)
    indices = np.ascontiguousarray(indices, dtype=np.int64)
    n = indptr.size - 1
    # offset of the first neighbour greater than the row's own node
    rows = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
    upper = indptr[1:] - np.bincount(rows[indices > rows], minlength=n)
    return int(_forward_triangles(indptr, upper.astype(np.int64), indices))


def count_moments(g: SignedGraph) -> GraphMoments:
    return GraphMoments(
        n_pos=g.n_pos,
        n_neg=g.n_neg,
        t_pos=count_triangles(g.pos_indptr, g.pos_indices),
        t_neg=count_triangles(g.neg_indptr, g.neg_indices),
    )


def apply_signed(g: SignedGraph, v) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(A+ v, A- v)``."""
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (g.n,):
        raise ValueError(f"vector has shape {v.shape}, expected ({g.n},)")
    return g.a_pos @ v, g.a_neg @ v


def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise EdgeListError(f"malformed token {tok!r}", lineno) from None


def parse_edge_list(text: str | TextIO, one_based: bool = False, n: int | None = None,
                    symmetrize: bool = False) -> SignedGraph:
    """Parse a whitespace-separated ``u v w`` signed edge list.

    Lines starting with ``%`` or ``#`` are comments. ``w`` must be 1 or -1.
    Node count is ``1 + max id`` unless ``n`` is given. With ``symmetrize``,
    a pair listed in both orientations with the same sign is merged into one
    edge (directed exports); conflicting signs are still an error.
    """
    if isinstance(text, str):
        text = io.StringIO(text)
    shift = 1 if one_based else 0
    seen: dict[tuple[int, int], tuple[int, int]] = {}
    us, vs, ws = [], [], []
    for lineno, line in enumerate(text, start=1):
        s = line.strip()
        if not s or s[0] in "%#":
            continue
        toks = s.split()
        if len(toks) != 3:
            raise EdgeListError(f"expected 3 fields 'u v w', got {len(toks)}", lineno)
        u, v, w = (_parse_int(t, lineno) for t in toks)
        u -= shift
        v -= shift
        if u < 0 or v < 0:
            raise EdgeListError("negative node id", lineno)
        if w not in (1, -1):
            raise EdgeListError(f"edge weight must be 1 or -1, got {w}", lineno)
        if u == v:
            raise EdgeListError(f"self-loop on node {u + shift}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            prev_w, prev_line = seen[key]
            if prev_w != w:
                raise EdgeListError(f"conflicting sign for pair {key} (see line {prev_line})", lineno)
            if not symmetrize:
                raise EdgeListError(f"duplicate edge {key} (see line {prev_line})", lineno)
            continue
        seen[key] = (w, lineno)
        us.append(key[0])
        vs.append(key[1])
        ws.append(w)
    max_id = max(vs) if vs else -1
    if n is None:
        n = max(max_id + 1, 2)
    elif max_id >= n:
        raise EdgeListError(f"node id {max_id} out of range for n={n}")
    return SignedGraph.from_arrays(n, us, vs, ws)


def format_edge_list(g: SignedGraph, one_based: bool = False, header: bool = True) -> str:
    """Serialize as ``u v w`` lines with ``u < v`` in lexicographic order."""
    shift = 1 if one_based else 0
    buf = io.StringIO()
    if header:
        buf.write(f"% signed n={g.n} pos={g.n_pos} neg={g.n_neg}\n")
    for u, v, w in g.edges():
        buf.write(f"{u + shift} {v + shift} {w}\n")
    return buf.getvalue()


def read_edge_list(path, one_based: bool = False, n: int | None = None,
                   symmetrize: bool = False) -> SignedGraph:
    with open(path) as fh:
        return parse_edge_list(fh, one_based=one_based, n=n, symmetrize=symmetrize)


def write_edge_list(g: SignedGraph, path, one_based: bool = False) -> None:
    with open(path, "w") as fh:
        fh.write(format_edge_list(g, one_based=one_based))
