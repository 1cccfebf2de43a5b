"""Sparse binary matrices and exact GF(2) linear algebra.

Storage is CSR-like (sorted column indices per row).  Rank and row-space
reduction run on dense copies packed 64 columns to a word.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from fractions import Fraction

import numpy as np
import scipy.sparse as sp

from .model import INF, ModelMatrix


class SparseBinaryMatrix:
    """Immutable GF(2) matrix stored as per-row sorted column lists.

    Row index lists are normalized on construction (sorted, duplicates dropped).
    """

    __slots__ = ("n_rows", "n_cols", "indptr", "indices", "_csr")

    def __init__(self, n_rows: int, n_cols: int, rows: Iterable[Iterable[int]]):
        indptr = [0]
        indices: list[int] = []
        for r in rows:
            cols = sorted(set(int(c) for c in r))
            if cols and (cols[0] < 0 or cols[-1] >= n_cols):
                raise ValueError(f"column index out of range for {n_cols} columns")
            indices.extend(cols)
            indptr.append(len(indices))
        if len(indptr) - 1 != n_rows:
            raise ValueError(f"expected {n_rows} rows, got {len(indptr) - 1}")
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self._csr = None

    @classmethod
    def from_dense(cls, a) -> SparseBinaryMatrix:
        a = np.asarray(a) % 2
        return cls(a.shape[0], a.shape[1], (np.flatnonzero(r) for r in a))

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> SparseBinaryMatrix:
        return cls(n_rows, n_cols, [[] for _ in range(n_rows)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    @property
    def nnz(self) -> int:
        return len(self.indices)

    def row(self, i: int) -> list[int]:
        return self.indices[self.indptr[i] : self.indptr[i + 1]].tolist()

    @property
    def rows(self) -> list[list[int]]:
        return [self.row(i) for i in range(self.n_rows)]

    def csr(self) -> sp.csr_matrix:
        if self._csr is None:
            data = np.ones(self.nnz, dtype=np.int64)
            self._csr = sp.csr_matrix((data, self.indices, self.indptr), shape=self.shape)
        return self._csr

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.uint8)
        for i in range(self.n_rows):
            out[i, self.indices[self.indptr[i] : self.indptr[i + 1]]] = 1
        return out

    def transpose(self) -> SparseBinaryMatrix:
        cols: list[list[int]] = [[] for _ in range(self.n_cols)]
        for i in range(self.n_rows):
            for c in self.indices[self.indptr[i] : self.indptr[i + 1]]:
                cols[c].append(i)
        return SparseBinaryMatrix(self.n_cols, self.n_rows, cols)

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> SparseBinaryMatrix:
        """Matrix ``B`` with ``B[i, j] = self[row_perm[i], col_perm[j]]``."""
        inv = np.empty(self.n_cols, dtype=np.int64)
        inv[np.asarray(col_perm)] = np.arange(self.n_cols)
        return SparseBinaryMatrix(
            self.n_rows, self.n_cols, (inv[self.indices[self.indptr[r] : self.indptr[r + 1]]] for r in row_perm)
        )

    def column_weights(self) -> np.ndarray:
        return np.bincount(self.indices, minlength=self.n_cols)

    def row_weights(self) -> np.ndarray:
        return np.diff(self.indptr)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseBinaryMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    def __hash__(self):
        return hash((self.shape, self.indices.tobytes(), self.indptr.tobytes()))

    def __repr__(self) -> str:
        return f"SparseBinaryMatrix({self.n_rows}x{self.n_cols}, nnz={self.nnz})"


def expand(mc: ModelMatrix) -> SparseBinaryMatrix:
    """Lift a model matrix to its ``(J*P) x (L*P)`` binary parity-check matrix.

    Block entry ``c`` puts a 1 at ``(r, (r + c) mod P)`` for every ``r``;
    ``INF`` leaves the block empty.
    """
    P = mc.P
    rows = []
    for j in range(mc.J):
        entries = mc.row(j)
        for r in range(P):
            rows.append([l * P + (r + c) % P for l, c in enumerate(entries) if c != INF])
    return SparseBinaryMatrix(mc.J * P, mc.L * P, rows)


def gf2_product(a: SparseBinaryMatrix, b: SparseBinaryMatrix) -> SparseBinaryMatrix:
    """``a @ b.T`` over GF(2)."""
    if a.n_cols != b.n_cols:
        raise ValueError(f"column counts differ: {a.n_cols} != {b.n_cols}")
    prod = (a.csr() @ b.csr().T).tocsr()
    prod.data %= 2
    prod.eliminate_zeros()
    prod.sort_indices()
    return SparseBinaryMatrix(a.n_rows, b.n_rows, (prod.indices[prod.indptr[i] : prod.indptr[i + 1]] for i in range(a.n_rows)))


def gf2_product_is_zero(a: SparseBinaryMatrix, b: SparseBinaryMatrix) -> bool:
    """True iff every row of ``a`` has even overlap with every row of ``b``."""
    if a.n_cols != b.n_cols:
        raise ValueError(f"column counts differ: {a.n_cols} != {b.n_cols}")
    prod = a.csr() @ b.csr().T
    return not np.any(prod.data % 2)


# --- dense bit-packed elimination -------------------------------------------


def pack_rows(a: SparseBinaryMatrix) -> np.ndarray:
    """Rows as ``uint64`` words; column ``c`` is bit ``c % 64`` of word ``c // 64``."""
    n_words = max(1, (a.n_cols + 63) // 64)
    out = np.zeros((a.n_rows, n_words), dtype=np.uint64)
    row_ids = np.repeat(np.arange(a.n_rows), np.diff(a.indptr))
    bits = np.left_shift(np.uint64(1), (a.indices % 64).astype(np.uint64))
    np.bitwise_or.at(out, (row_ids, a.indices // 64), bits)
    return out


def pack_vectors(v: np.ndarray) -> np.ndarray:
    """Pack a ``(B, n)`` 0/1 array the same way as :func:`pack_rows`."""
    v = np.atleast_2d(np.asarray(v, dtype=np.uint64))
    n_words = max(1, (v.shape[1] + 63) // 64)
    padded = np.zeros((v.shape[0], n_words * 64), dtype=np.uint64)
    padded[:, : v.shape[1]] = v & np.uint64(1)
    shifts = np.arange(64, dtype=np.uint64)
    return np.bitwise_or.reduce(padded.reshape(v.shape[0], n_words, 64) << shifts, axis=-1)


def _bit(words: np.ndarray, col: int) -> np.ndarray:
    return (words[..., col // 64] >> np.uint64(col % 64)) & np.uint64(1)


def row_echelon(a: SparseBinaryMatrix) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon basis of the row space and its pivot columns."""
    m = pack_rows(a)
    pivots: list[int] = []
    r = 0
    n_rows = m.shape[0]
    for col in range(a.n_cols):
        if r == n_rows:
            break
        w, b = col // 64, np.uint64(col % 64)
        column = (m[r:, w] >> b) & np.uint64(1)
        hits = np.flatnonzero(column)
        if hits.size == 0:
            continue
        p = r + hits[0]
        if p != r:
            m[[r, p]] = m[[p, r]]
        mask = ((m[:, w] >> b) & np.uint64(1)).astype(bool)
        mask[r] = False
        if mask.any():
            m[mask] ^= m[r]
        pivots.append(col)
        r += 1
    return m[:r].copy(), pivots


def gf2_rank(a: SparseBinaryMatrix) -> int:
    return len(row_echelon(a)[1])


class RowSpace:
    """Membership oracle for the GF(2) row space of a matrix."""

    def __init__(self, a: SparseBinaryMatrix):
        self.n = a.n_cols
        self.basis, self.pivots = row_echelon(a)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, packed: np.ndarray) -> np.ndarray:
        out = np.array(packed, dtype=np.uint64, copy=True)
        for row, col in zip(self.basis, self.pivots):
            hit = _bit(out, col).astype(bool)
            if hit.any():
                out[hit] ^= row
        return out

    def contains(self, v: np.ndarray) -> np.ndarray:
        """Vectorized membership for a ``(B, n)`` or ``(n,)`` 0/1 array."""
        v = np.asarray(v)
        packed = pack_vectors(v)
        res = ~np.any(self.reduce(packed), axis=1)
        return res if v.ndim == 2 else bool(res[0])


def quantum_rate(hc: SparseBinaryMatrix, hd: SparseBinaryMatrix) -> Fraction:
    """``(n - rank H_C - rank H_D) / n`` for an orthogonal pair."""
    if hc.n_cols != hd.n_cols:
        raise ValueError(f"code lengths differ: {hc.n_cols} != {hd.n_cols}")
    if not gf2_product_is_zero(hc, hd):
        raise ValueError("H_C H_D^T != 0: the pair does not define a CSS code")
    n = hc.n_cols
    return Fraction(n - gf2_rank(hc) - gf2_rank(hd), n)


# --- Tanner graph -----------------------------------------------------------


class GirthAtLeast(int):
    """Girth lower bound returned when no cycle shorter than the cap exists."""

    def __repr__(self) -> str:
        return f"GirthAtLeast({int(self)})"

    def __str__(self) -> str:
        return f">={int(self)}"


def tanner_edges(a: SparseBinaryMatrix) -> set[tuple[int, int]]:
    return {(i, int(c)) for i in range(a.n_rows) for c in a.row(i)}


def default_girth_cap(a: SparseBinaryMatrix) -> int:
    return 2 * (a.n_rows + a.n_cols) + 2


def tanner_girth(a: SparseBinaryMatrix, cap: int | None = None, circulant: int | None = None) -> int:
    """Length of the shortest cycle in the Tanner graph of ``a``.

    Returns a :class:`GirthAtLeast` equal to ``cap`` when there is no cycle
    shorter than ``cap``.  Runs a depth-bounded BFS from every vertex; with
    ``circulant=P`` the matrix is assumed quasi-cyclic with block size ``P``
    and only one vertex per block orbit is used as a root (the block shift is
    a graph automorphism, so the result is the same).
    """
    if cap is None:
        cap = default_girth_cap(a)
    if cap < 4:
        raise ValueError(f"girth cap must be >= 4, got {cap}")
    m = a.n_rows
    adj: list[list[int]] = [[] for _ in range(m + a.n_cols)]
    for i in range(m):
        for c in a.row(i):
            adj[i].append(m + c)
            adj[m + c].append(i)

    if circulant:
        if m % circulant or a.n_cols % circulant:
            raise ValueError("dimensions are not multiples of the circulant size")
        roots: Iterable[int] = [v for v in range(m + a.n_cols) if (v if v < m else v - m) % circulant == 0]
    else:
        roots = range(m + a.n_cols)

    best = cap
    dist = [-1] * len(adj)
    parent = [-1] * len(adj)
    for root in roots:
        if not adj[root]:
            continue
        seen = [root]
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            # in a bipartite graph a cycle first closed while expanding u has length >= 2*dist[u] + 2
            if 2 * dist[u] + 2 >= best:
                break
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    seen.append(w)
                    queue.append(w)
                elif w != parent[u]:
                    best = min(best, dist[u] + dist[w] + 1)
        for v in seen:
            dist[v] = -1
            parent[v] = -1
        if best == 4:
            break
    return best if best < cap else GirthAtLeast(cap)


def has_four_cycle(a: SparseBinaryMatrix) -> bool:
    """Two rows sharing two or more columns; sparse-product shortcut for large matrices."""
    g = (a.csr() @ a.csr().T).tocoo()
    off = g.row != g.col
    return bool(np.any(g.data[off] >= 2))


# --- alist interchange ------------------------------------------------------


def to_alist(a: SparseBinaryMatrix) -> str:
    """MacKay alist text: ``n m``, max weights, weights, then 1-based column and row lists."""
    cols = a.transpose()
    cw, rw = cols.row_weights(), a.row_weights()
    max_c = int(cw.max()) if a.n_cols else 0
    max_r = int(rw.max()) if a.n_rows else 0
    lines = [f"{a.n_cols} {a.n_rows}", f"{max_c} {max_r}", " ".join(map(str, cw)), " ".join(map(str, rw))]
    for lst, width in ((cols.rows, max_c), (a.rows, max_r)):
        for idx in lst:
            # an all-zero matrix still gets one placeholder per line
            padded = [i + 1 for i in idx] + [0] * (max(width, 1) - len(idx))
            lines.append(" ".join(map(str, padded)))
    return "\n".join(lines) + "\n"


def from_alist(text: str) -> SparseBinaryMatrix:
    lines = [ln.split() for ln in text.strip().splitlines()]
    try:
        n, m = map(int, lines[0])
        col_lists = [[int(x) - 1 for x in ln if int(x) > 0] for ln in lines[4 : 4 + n]]
    except (ValueError, IndexError) as exc:
        raise ValueError(f"malformed alist: {exc}") from None
    if len(col_lists) != n:
        raise ValueError(f"malformed alist: expected {n} column lines")
    rows: list[list[int]] = [[] for _ in range(m)]
    for c, idx in enumerate(col_lists):
        for r in idx:
            if not 0 <= r < m:
                raise ValueError(f"malformed alist: row index {r + 1} out of range")
            rows[r].append(c)
    return SparseBinaryMatrix(m, n, rows)
