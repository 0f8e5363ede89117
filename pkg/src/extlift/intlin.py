"""Exact integer linear algebra over products of cyclic groups.

Everything here works with arbitrary-precision Python integers; no floats,
no modular shortcuts.  The central object is a full-rank triangular lattice
basis in Z^n that always contains the lattice spanned by the coordinate
moduli, so membership tests and subgroup orders in prod_i Z/m_i reduce to
divisibility checks against the pivots.
"""

from __future__ import annotations

from math import prod
from typing import Optional, Sequence

__all__ = ["ext_gcd", "TriangularLattice", "kernel_order"]


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        return -old_r, -old_x, -old_y
    return old_r, old_x, old_y


class TriangularLattice:
    """Upper-triangular basis of a lattice L with diag(moduli) <= L <= Z^n.

    The basis keeps one pivot row per coordinate (the initial rows are the
    moduli times unit vectors), so it stays square and triangular as vectors
    are inserted.  Each row optionally carries an integer expression vector
    recording how the row was assembled from inserted generators; reducing a
    vector against the basis then recovers generator coefficients, which is
    how coboundary witnesses are produced.
    """

    def __init__(self, moduli: Sequence[int], expr_len: int = 0):
        if any(m < 1 for m in moduli):
            raise ValueError("moduli must be positive")
        self.n = len(moduli)
        self.moduli = tuple(moduli)
        self.expr_len = expr_len
        self.rows = [[0] * self.n for _ in range(self.n)]
        for i, m in enumerate(moduli):
            self.rows[i][i] = m
        self.exprs = [[0] * expr_len for _ in range(self.n)]

    def pivot(self, i: int) -> int:
        return self.rows[i][i]

    def det(self) -> int:
        return prod(self.rows[i][i] for i in range(self.n))

    def span_order(self) -> int:
        """Order of L / diag(moduli), i.e. of the spanned subgroup of prod Z/m_i."""
        d = self.det()
        total = prod(self.moduli)
        if total % d:
            raise AssertionError("lattice does not contain the modulus lattice")
        return total // d

    def insert(self, vec: Sequence[int], expr: Optional[Sequence[int]] = None) -> None:
        """Grow the lattice by an integer vector, restoring triangular form."""
        v = list(vec)
        if len(v) != self.n:
            raise ValueError(f"expected vector of length {self.n}, got {len(v)}")
        e = [0] * self.expr_len if expr is None else list(expr)
        changed: list[int] = []
        for i in range(self.n):
            vi = v[i]
            if vi == 0:
                continue
            row = self.rows[i]
            p = row[i]
            if vi % p == 0:
                q = vi // p
                erow = self.exprs[i]
                for j in range(i, self.n):
                    v[j] -= q * row[j]
                for j in range(self.expr_len):
                    e[j] -= q * erow[j]
            else:
                g, a, b = ext_gcd(p, vi)
                pg, vg = p // g, vi // g
                erow = self.exprs[i]
                new_row = [0] * i + [a * row[j] + b * v[j] for j in range(i, self.n)]
                new_v = [0] * (i + 1) + [pg * v[j] - vg * row[j] for j in range(i + 1, self.n)]
                new_erow = [a * erow[j] + b * e[j] for j in range(self.expr_len)]
                new_e = [pg * e[j] - vg * erow[j] for j in range(self.expr_len)]
                self.rows[i] = new_row
                self.exprs[i] = new_erow
                v = new_v
                e = new_e
                changed.append(i)
        for i in changed:
            self._reduce_tail(i)

    def _reduce_tail(self, i: int) -> None:
        # keep off-pivot entries small: subtract multiples of the pivot rows below
        row = self.rows[i]
        erow = self.exprs[i]
        for j in range(i + 1, self.n):
            q = row[j] // self.rows[j][j]
            if q:
                rj = self.rows[j]
                ej = self.exprs[j]
                for l in range(j, self.n):
                    row[l] -= q * rj[l]
                for l in range(self.expr_len):
                    erow[l] -= q * ej[l]

    def reduce(self, vec: Sequence[int]) -> Optional[list[int]]:
        """Express vec over the basis; return the generator expression or None.

        Returns the accumulated expression vector when vec lies in the
        lattice, None otherwise.  The basis is not modified.
        """
        v = list(vec)
        if len(v) != self.n:
            raise ValueError(f"expected vector of length {self.n}, got {len(v)}")
        acc = [0] * self.expr_len
        for i in range(self.n):
            vi = v[i]
            if vi == 0:
                continue
            row = self.rows[i]
            p = row[i]
            if vi % p:
                return None
            q = vi // p
            for j in range(i, self.n):
                v[j] -= q * row[j]
            erow = self.exprs[i]
            for j in range(self.expr_len):
                acc[j] += q * erow[j]
        return acc

    def contains(self, vec: Sequence[int]) -> bool:
        return self.reduce(vec) is not None

    def remainder(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Canonical coset representative of vec modulo the lattice.

        Every coordinate is a pivot column, so reducing each entry into
        [0, pivot) left to right leaves a unique representative: two reduced
        vectors in one coset differ by a lattice element whose first nonzero
        entry would be a pivot multiple smaller than the pivot.
        """
        v = list(vec)
        if len(v) != self.n:
            raise ValueError(f"expected vector of length {self.n}, got {len(v)}")
        for i in range(self.n):
            row = self.rows[i]
            q = v[i] // row[i]
            if q:
                for j in range(i, self.n):
                    v[j] -= q * row[j]
        return tuple(v)


def _np_span_insert(tri, vec, col_moduli) -> None:
    # numpy analogue of TriangularLattice.insert, no expression tracking
    v = vec % col_moduli
    while True:
        nz = v.nonzero()[0]
        if nz.size == 0:
            return
        i = int(nz[0])
        p = int(tri[i, i])
        b = int(v[i])
        if b % p == 0:
            v = (v - (b // p) * tri[i]) % col_moduli
        else:
            g, a, t = ext_gcd(p, b)
            old = tri[i].copy()
            tri[i] = (a * old + t * v) % col_moduli
            tri[i, i] = g
            v = ((p // g) * v - (b // g) * old) % col_moduli


def kernel_order(rows, row_moduli, col_moduli) -> int:
    """Count solutions of T v = 0 in prod_j Z/col_moduli[j].

    `rows` is a dense integer matrix (anything numpy can ingest); equation s
    is a congruence mod row_moduli[s].  The map must be well defined, i.e.
    row_moduli[s] must divide rows[s][j] * col_moduli[j] for every entry.

    The count is |domain| / |image|, and the image order is computed on the
    Pontryagin dual side, where the ambient group is the (small) domain dual
    and the generators are the scaled matrix rows.  Entries stay below
    max(col_moduli)^2, so 64-bit arithmetic is exact within the supported
    group-order range.
    """
    import numpy as np

    col = np.asarray(col_moduli, dtype=np.int64)
    n = col.size
    domain = prod(int(m) for m in col)
    if n == 0:
        return 1
    if int(col.max()) > 1 << 20:
        raise ValueError("moduli too large for the 64-bit kernel solver")
    mat = np.asarray(rows, dtype=np.int64).reshape(-1, n)
    rm = np.asarray(row_moduli, dtype=np.int64).reshape(-1)
    if mat.shape[0] != rm.size:
        raise ValueError("one modulus per row required")
    mat = mat % rm[:, None]
    # dedupe (row, modulus) pairs; identical congruences are common here
    stacked = np.unique(np.concatenate([mat, rm[:, None]], axis=1), axis=0)
    tri = np.diag(col).astype(np.int64)
    for row in stacked:
        e = int(row[n])
        scaled = row[:n] * col
        if np.any(scaled % e):
            raise ValueError("system not well defined for the given moduli")
        dual = (scaled // e) % col
        if dual.any():
            _np_span_insert(tri, dual, col)
    image = prod(int(m) for m in col) // prod(int(tri[i, i]) for i in range(n))
    if domain % image:
        raise AssertionError("image order must divide domain order")
    return domain // image
