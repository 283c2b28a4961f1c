"""Fixture digraphs: trapezohedra, their chain, quotients and random digraphs.

Random digraphs use numpy's PCG64 bit generator seeded with the given seed:
one ``random()`` draw per ordered pair ``(u, v)`` in row-major order, the
diagonal included (and discarded), so outputs match across platforms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .chains import Chain, DigraphMorphism
from .digraph import Digraph
from .errors import NotAPartition, OrderTooSmall
from .fields import GF, Field


def _trapezohedron_ids(m: int):
    a, b = 0, 1
    i = [2 + k for k in range(m)]
    j = [2 + m + k for k in range(m)]
    return a, b, i, j


def trapezohedron(m: int) -> Digraph:
    """a -> i_k -> j_k -> b and i_{k+1} -> j_k, indices mod m."""
    if m < 2:
        raise OrderTooSmall(f"trapezohedron needs m >= 2, got {m}")
    a, b, i, j = _trapezohedron_ids(m)
    labels = ["a", "b"] + [f"i{k}" for k in range(m)] + [f"j{k}" for k in range(m)]
    arrows = []
    for k in range(m):
        arrows += [(a, i[k]), (i[k], j[k]), (j[k], b), (i[(k + 1) % m], j[k])]
    return Digraph(labels, arrows)


def tau(m: int, field: Field = GF) -> Chain:
    """Sum over k of e(a, i_k, j_k, b) - e(a, i_{k+1}, j_k, b) on ``trapezohedron(m)``."""
    if m < 2:
        raise OrderTooSmall(f"tau needs m >= 2, got {m}")
    a, b, i, j = _trapezohedron_ids(m)
    terms = []
    for k in range(m):
        terms.append(((a, i[k], j[k], b), 1))
        terms.append(((a, i[(k + 1) % m], j[k], b), -1))
    return Chain(3, terms, field)


def merging_quotient(
    g: Digraph, partition: Sequence[Iterable], names: Sequence[str] | None = None
) -> tuple[Digraph, DigraphMorphism]:
    """Collapse each block to a vertex; arrows are the projected inter-block arrows.

    Blocks may list ids or labels.  Default block names join member labels
    with ``+``.
    """
    blocks = [[g.vid(v) for v in blk] for blk in partition]
    seen: dict[int, int] = {}
    for k, blk in enumerate(blocks):
        if not blk:
            raise NotAPartition(f"block {k} is empty")
        for v in blk:
            if v in seen:
                raise NotAPartition(f"vertex {g.labels[v]!r} is in more than one block")
            seen[v] = k
    if len(seen) != g.n:
        missing = [g.labels[v] for v in range(g.n) if v not in seen]
        raise NotAPartition(f"vertices not covered: {missing}")
    if names is None:
        names = ["+".join(g.labels[v] for v in blk) for blk in blocks]
    elif len(names) != len(blocks):
        raise NotAPartition("one name per block is required")
    mapping = tuple(seen[v] for v in range(g.n))
    arrows = {(mapping[u], mapping[v]) for u, v in g.arrows if mapping[u] != mapping[v]}
    q = Digraph(names, arrows)
    return q, DigraphMorphism(g, q, mapping)


@dataclass(frozen=True)
class RandomSpec:
    n: int
    p: float
    seed: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")


def random_digraph(spec: RandomSpec) -> Digraph:
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    draws = rng.random((spec.n, spec.n))
    keep = draws < spec.p
    np.fill_diagonal(keep, False)
    us, vs = np.nonzero(keep)
    return Digraph([str(v) for v in range(spec.n)], zip(us.tolist(), vs.tolist()))


SWEEP_DENSITIES = (0.1, 0.2, 0.35, 0.5)


def sweep_specs(count: int = 500, max_n: int = 12, densities: Sequence[float] = SWEEP_DENSITIES) -> list[RandomSpec]:
    """The seeded random-digraph manifest used by the equivalence sweep.

    Seed ``s`` gets ``n = 2 + s % (max_n - 1)`` and density
    ``densities[s % len(densities)]``.
    """
    return [RandomSpec(2 + s % (max_n - 1), densities[s % len(densities)], s) for s in range(count)]


__all__ = [
    "trapezohedron",
    "tau",
    "merging_quotient",
    "RandomSpec",
    "random_digraph",
    "sweep_specs",
    "SWEEP_DENSITIES",
]
