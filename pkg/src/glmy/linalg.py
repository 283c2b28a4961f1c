"""Exact elimination over GF(q) and the rationals.

Sparse matrices are given as a list of rows, each a ``{column: value}`` dict.
Independent blocks (rows linked through shared columns) are eliminated
separately, which keeps every dense matrix small.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from .fields import Field, PrimeField

SparseRow = dict[int, object]

_MAX_KERNEL_Q = 2**31


def split_blocks(rows: Sequence[SparseRow]) -> list[tuple[list[int], list[int]]]:
    """Group rows connected through shared columns.

    Returns ``(row_indices, column_indices)`` per block, both ascending, with
    blocks ordered by their smallest row index.
    """
    parent = list(range(len(rows)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner: dict[int, int] = {}
    for r, row in enumerate(rows):
        for c in row:
            if c in owner:
                ra, rb = find(owner[c]), find(r)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
            else:
                owner[c] = r
    groups: dict[int, list[int]] = {}
    for r in range(len(rows)):
        groups.setdefault(find(r), []).append(r)
    out = []
    for root in sorted(groups):
        rs = groups[root]
        cs = sorted({c for r in rs for c in rows[r]})
        out.append((rs, cs))
    return out


def _rref_gf(T: list[list[int]], field: PrimeField, ncols: int):
    q = field.q
    if q < _MAX_KERNEL_Q:
        M = np.array(T, dtype=np.int64).reshape(len(T), ncols) % q
        rank, piv = _kernels.rref_mod(M, q)
        return M, [int(c) for c in piv[:rank]]
    return _rref_generic(T, field, ncols)


def _rref_generic(T, field: Field, ncols: int):
    M = [[field(x) for x in row] for row in T]
    pivots = []
    r = 0
    nrows = len(M)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = field.inv(M[r][c])
        M[r] = [field(x * inv) for x in M[r]]
        for i in range(nrows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                Mi, Mr = M[i], M[r]
                M[i] = [field(Mi[k] - f * Mr[k]) for k in range(ncols)]
        pivots.append(c)
        r += 1
    return M, pivots


def rref(T: list[list], field: Field, ncols: int | None = None):
    """Reduced row echelon form; returns ``(matrix, pivot_columns)``.

    For GF(q) the matrix comes back as an int64 array with entries in
    ``[0, q)``; for the rationals as nested lists of ``Fraction``.
    """
    ncols = len(T[0]) if ncols is None else ncols
    if isinstance(field, PrimeField):
        return _rref_gf(T, field, ncols)
    return _rref_generic([[Fraction(x) for x in row] for row in T], field, ncols)


def _block_dense_transpose(rows, rs, cs):
    cpos = {c: k for k, c in enumerate(cs)}
    T = [[0] * len(rs) for _ in cs]
    for k, r in enumerate(rs):
        for c, v in rows[r].items():
            T[cpos[c]][k] = v
    return T


def rank(rows: Sequence[SparseRow], field: Field) -> int:
    total = 0
    for rs, cs in split_blocks(rows):
        if not cs:
            continue
        T = _block_dense_transpose(rows, rs, cs)
        _, piv = rref(T, field, len(rs))
        total += len(piv)
    return total


def left_kernel_dim(rows: Sequence[SparseRow], field: Field) -> int:
    """Dimension of ``{x : x M = 0}``."""
    return len(rows) - rank(rows, field)


def left_kernel(rows: Sequence[SparseRow], field: Field) -> list[dict[int, object]]:
    """Basis of ``{x : x M = 0}`` as sparse vectors ``{row_index: value}``.

    Deterministic: one vector per free row of each block, in ascending order
    of the free row's index.
    """
    vectors = []
    for rs, cs in split_blocks(rows):
        if not cs:
            vectors.extend({r: field(1)} for r in rs)
            continue
        T = _block_dense_transpose(rows, rs, cs)
        R, piv = rref(T, field, len(rs))
        pivset = set(piv)
        for f in range(len(rs)):
            if f in pivset:
                continue
            vec = {rs[f]: field(1)}
            for i, pc in enumerate(piv):
                val = field(-int(R[i][f])) if isinstance(field, PrimeField) else -R[i][f]
                if val != 0:
                    vec[rs[pc]] = val
            vectors.append(dict(sorted(vec.items())))
    return vectors
