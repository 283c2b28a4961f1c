"""Definition-level computation of the invariant path spaces.

The space of invariant p-paths is the set of allowed chains whose boundary has
zero coefficient on every non-allowed face.  Here that is computed literally:
build the matrix from allowed p-paths to non-allowed regular (p-1)-faces and
take its left kernel by exact elimination.  Nothing in this module uses the
structural algorithm, so it serves as an independent check on it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .chains import Chain, ElemPath, allowed_paths, is_regular
from .digraph import Digraph
from .errors import BudgetExceeded, DegreeMismatch
from .fields import GF, Field

DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class BoundaryMatrix:
    rows: tuple[ElemPath, ...]
    columns: tuple[ElemPath, ...]
    entries: tuple[dict[int, object], ...]
    field: Field

    def entry(self, r: int, c: int):
        return self.entries[r].get(c, self.field(0))

    def dense(self) -> list[list]:
        return [[self.entry(r, c) for c in range(len(self.columns))] for r in range(len(self.rows))]


def count_allowed_paths(g: Digraph, p: int) -> int:
    """Number of allowed p-paths (directed walks with p arrows)."""
    if g.n == 0:
        return 0
    counts = [1] * g.n
    for _ in range(p):
        counts = [sum(counts[w] for w in g.out_adj[v]) for v in range(g.n)]
    return sum(counts)


def _check_budget(g: Digraph, p: int, budget: int | None):
    if budget is None:
        return
    total = count_allowed_paths(g, p)
    if total > budget:
        raise BudgetExceeded(total, budget)


def boundary_matrix(
    g: Digraph,
    p: int,
    *,
    endpoints: tuple | None = None,
    field: Field = GF,
    budget: int | None = DEFAULT_BUDGET,
) -> BoundaryMatrix:
    if p < 0:
        raise ValueError("degree must be non-negative")
    if endpoints is None:
        _check_budget(g, p, budget)
    rows = allowed_paths(g, p, endpoints)
    if budget is not None and len(rows) > budget:
        raise BudgetExceeded(len(rows), budget)
    entries = []
    for path in rows:
        row: dict[ElemPath, int] = {}
        for q in range(len(path)):
            face = path[:q] + path[q + 1 :]
            if not is_regular(face):
                continue
            if all(g.has_arrow(face[k], face[k + 1]) for k in range(len(face) - 1)):
                continue
            row[face] = row.get(face, 0) + (1 if q % 2 == 0 else -1)
        entries.append({f: v for f, v in row.items() if field(v) != 0})
    faces = sorted({f for row in entries for f in row})
    col_index = {f: k for k, f in enumerate(faces)}
    sparse = tuple({col_index[f]: field(v) for f, v in row.items()} for row in entries)
    return BoundaryMatrix(tuple(rows), tuple(faces), sparse, field)


def omega_dim(g: Digraph, p: int, *, field: Field = GF, budget: int | None = DEFAULT_BUDGET) -> int:
    bm = boundary_matrix(g, p, field=field, budget=budget)
    return linalg.left_kernel_dim(bm.entries, field)


def omega_basis(g: Digraph, p: int, *, field: Field = GF, budget: int | None = DEFAULT_BUDGET) -> list[Chain]:
    bm = boundary_matrix(g, p, field=field, budget=budget)
    return [
        Chain(p, {bm.rows[r]: v for r, v in vec.items()}, field)
        for vec in linalg.left_kernel(bm.entries, field)
    ]


def omega_pair_dim(
    g: Digraph, p: int, a, b, *, field: Field = GF, budget: int | None = DEFAULT_BUDGET
) -> int:
    """Kernel dimension restricted to allowed p-paths running from ``a`` to ``b``."""
    bm = boundary_matrix(g, p, endpoints=(g.vid(a), g.vid(b)), field=field, budget=budget)
    return linalg.left_kernel_dim(bm.entries, field)


def omega_pair_dims(
    g: Digraph, p: int, *, field: Field = GF, budget: int | None = DEFAULT_BUDGET
) -> dict[tuple[int, int], int]:
    """Nonzero per-pair dimensions, each from its own restricted matrix."""
    bm = boundary_matrix(g, p, field=field, budget=budget)
    groups: dict[tuple[int, int], list[int]] = {}
    for r, path in enumerate(bm.rows):
        groups.setdefault((path[0], path[-1]), []).append(r)
    out = {}
    for key in sorted(groups):
        d = linalg.left_kernel_dim([bm.entries[r] for r in groups[key]], field)
        if d:
            out[key] = d
    return out


def rank_of(chains, field: Field | None = None) -> int:
    chains = list(chains)
    if not chains:
        return 0
    degrees = {c.degree for c in chains}
    if len(degrees) > 1:
        raise DegreeMismatch(f"chains of degrees {sorted(degrees)}")
    field = field or chains[0].field
    index: dict[ElemPath, int] = {}
    rows = []
    for c in chains:
        rows.append({index.setdefault(p, len(index)): field(v) for p, v in c.items()})
    return linalg.rank(rows, field)


def omega2_formula(g: Digraph) -> int:
    """Closed-form count for degree 2.

    Triangles ``a->b->c`` with ``a->c``; for each ``a != c`` with no arrow
    ``a->c``, ``max(0, m - 1)`` where ``m`` counts the 2-step paths; plus two
    per double arrow.
    """
    adj = g.adjacency.astype(np.int64)
    two = adj @ adj
    total = 0
    for a in range(g.n):
        for c in range(g.n):
            if a == c:
                continue
            m = int(two[a, c])
            if adj[a, c]:
                total += m
            elif m > 1:
                total += m - 1
    doubles = int(np.sum(adj * adj.T)) // 2
    return total + 2 * doubles


__all__ = [
    "DEFAULT_BUDGET",
    "BoundaryMatrix",
    "count_allowed_paths",
    "boundary_matrix",
    "omega_dim",
    "omega_basis",
    "omega_pair_dim",
    "omega_pair_dims",
    "rank_of",
    "omega2_formula",
]
