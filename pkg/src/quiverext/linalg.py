"""Sparse exact linear algebra.

Vectors are dicts ``{column: coefficient}`` with no zero entries.  Columns are
any totally ordered keys; the pivot of a row is its *largest* column, so when
columns are deglex path keys the pivots are the deglex-largest paths.
"""

from __future__ import annotations

from typing import Hashable, Iterable


def axpy(y: dict, a, x: dict) -> None:
    """y += a*x in place, dropping zeros."""
    for k, v in x.items():
        w = y.get(k)
        if w is None:
            y[k] = a * v
        else:
            w = w + a * v
            if w:
                y[k] = w
            else:
                del y[k]


def scaled(a, x: dict) -> dict:
    if not a:
        return {}
    return {k: a * v for k, v in x.items()}


class RowSpace:
    """Incrementally maintained reduced row echelon form.

    Every stored row has coefficient 1 at its pivot (largest column) and no
    entry at any other row's pivot.
    """

    def __init__(self, key=None):
        self.key = key
        self.rows: dict[Hashable, dict] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _max(self, cols):
        return max(cols, key=self.key) if self.key else max(cols)

    def reduce(self, vec: dict) -> dict:
        """Return vec reduced modulo the span (a fresh dict)."""
        v = dict(vec)
        for p in [c for c in v if c in self.rows]:
            c = v.get(p)
            if c:
                axpy(v, -c, self.rows[p])
        return v

    def add(self, vec: dict):
        """Insert vec; return its pivot, or None if it was already in the span."""
        v = self.reduce(vec)
        if not v:
            return None
        p = self._max(v)
        inv = 1 / v[p]
        v = {k: c * inv for k, c in v.items()}
        for row in self.rows.values():
            c = row.get(p)
            if c:
                axpy(row, -c, v)
        self.rows[p] = v
        return p

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def pivots(self):
        return set(self.rows)

    def basis(self) -> list[dict]:
        return [self.rows[p] for p in sorted(self.rows, key=self.key)]


def span(vectors: Iterable[dict], key=None) -> RowSpace:
    rs = RowSpace(key)
    for v in vectors:
        rs.add(v)
    return rs


def same_span(a: Iterable[dict], b: Iterable[dict], key=None) -> bool:
    sa, sb = span(a, key), span(b, key)
    return sa.rank == sb.rank and all(sa.contains(v) for v in sb.basis())


def nullspace(rows: list[dict], columns: list, key=None) -> list[dict]:
    """Basis of {x : <r, x> = 0 for every r}, one vector per free column.

    ``columns`` lists the ambient coordinates.  The vectors are returned in
    the order of their free column.
    """
    rs = span(rows, key)
    free = [c for c in sorted(columns, key=key) if c not in rs.rows]
    out = []
    for f in free:
        x = {f: 1}
        for p, row in rs.rows.items():
            c = row.get(f)
            if c:
                x[p] = -c
        out.append(x)
    return out


def solve_square(matrix: list[list], rhs: list[list]) -> list[list]:
    """Solve M X = B over a field by Gauss-Jordan; raise if M is singular.

    ``matrix`` is n x n, ``rhs`` is n x k; returns X as n x k.
    """
    n = len(matrix)
    aug = [list(matrix[i]) + list(rhs[i]) for i in range(n)]
    width = len(aug[0]) if aug else 0
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [aug[r][c] - f * aug[col][c] for c in range(width)]
    return [row[n:] for row in aug]


def bareiss_rank(matrix: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination.

    Independent of :class:`RowSpace`; used as a cross-check oracle.
    """
    m = [list(map(int, row)) for row in matrix]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank, prev = 0, 1
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(rank + 1, nrows):
            for c in range(col + 1, ncols):
                m[r][c] = (m[r][c] * m[rank][col] - m[rank][c] * m[r][col]) // prev
            m[r][col] = 0
        prev = m[rank][col]
        rank += 1
        if rank == nrows:
            break
    return rank


def left_kernel(vectors: list[dict], key=None) -> list[dict]:
    """Basis of the linear relations {c : sum_k c_k vectors[k] = 0}.

    Relations are dicts ``{index: coeff}``; each is tagged by the first
    vector index that turned out dependent, so the basis is deterministic.
    """
    pick = (lambda cols: max(cols, key=key)) if key else max
    rows: dict = {}
    track: dict = {}
    out = []
    for idx, vec in enumerate(vectors):
        v = dict(vec)
        comb = {idx: 1}
        for p in [c for c in v if c in rows]:
            c = v.get(p)
            if c:
                axpy(v, -c, rows[p])
                axpy(comb, -c, track[p])
        if not v:
            out.append(comb)
            continue
        p = pick(v)
        inv = 1 / v[p]
        v = {k: c * inv for k, c in v.items()}
        comb = {k: c * inv for k, c in comb.items()}
        for q, row in rows.items():
            c = row.get(p)
            if c:
                axpy(row, -c, v)
                axpy(track[q], -c, comb)
        rows[p] = v
        track[p] = comb
    return out
