"""Finite digraphs on dense integer ids, bitset vertex subsets, spanning forests.

Vertices are ``0..n-1`` with a label table.  Vertex subsets are Python ``int``
bitsets.  Every structure here is immutable once built.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import EdgeInForest, OverlappingSets, SelfLoop, UnknownEdge, UnknownVertex

Arrow = tuple[int, int]


def _iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class VertexSubset:
    """A set of vertex ids drawn from ``range(universe)``."""

    bits: int
    universe: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.universe:
            raise ValueError("bitset has members outside the universe")

    @classmethod
    def from_ids(cls, ids: Iterable[int], universe: int) -> "VertexSubset":
        bits = 0
        for v in ids:
            if not 0 <= v < universe:
                raise UnknownVertex(v)
            bits |= 1 << v
        return cls(bits, universe)

    @classmethod
    def empty(cls, universe: int) -> "VertexSubset":
        return cls(0, universe)

    @cached_property
    def count(self) -> int:
        return bin(self.bits).count("1")

    def __len__(self) -> int:
        return self.count

    def __iter__(self) -> Iterator[int]:
        return _iter_bits(self.bits)

    def __contains__(self, v) -> bool:
        return isinstance(v, int) and v >= 0 and bool(self.bits >> v & 1)

    def __bool__(self) -> bool:
        return self.bits != 0

    def _check(self, other: "VertexSubset"):
        if self.universe != other.universe:
            raise ValueError("subsets of different universes")

    def __and__(self, other: "VertexSubset") -> "VertexSubset":
        self._check(other)
        return VertexSubset(self.bits & other.bits, self.universe)

    def __or__(self, other: "VertexSubset") -> "VertexSubset":
        self._check(other)
        return VertexSubset(self.bits | other.bits, self.universe)

    def __sub__(self, other: "VertexSubset") -> "VertexSubset":
        self._check(other)
        return VertexSubset(self.bits & ~other.bits, self.universe)

    def with_vertex(self, v: int) -> "VertexSubset":
        return VertexSubset(self.bits | (1 << v), self.universe)

    def without_vertex(self, v: int) -> "VertexSubset":
        return VertexSubset(self.bits & ~(1 << v), self.universe)

    def isdisjoint(self, other: "VertexSubset") -> bool:
        return not (self.bits & other.bits)

    def ids(self) -> tuple[int, ...]:
        return tuple(self)

    def __repr__(self) -> str:
        return f"VertexSubset({list(self)})"


class Digraph:
    """Immutable digraph without self-loops.

    ``labels[v]`` is the token of vertex ``v``; ``arrows`` is a frozenset of
    ``(u, v)`` id pairs.
    """

    def __init__(self, labels: Sequence[str], arrows: Iterable[Arrow]):
        self.labels: tuple[str, ...] = tuple(str(x) for x in labels)
        n = len(self.labels)
        index = {}
        for v, lab in enumerate(self.labels):
            if lab in index:
                raise ValueError(f"duplicate label {lab!r}")
            index[lab] = v
        self.index: dict[str, int] = index
        arrs = set()
        for u, v in arrows:
            if not (0 <= u < n):
                raise UnknownVertex(u)
            if not (0 <= v < n):
                raise UnknownVertex(v)
            if u == v:
                raise SelfLoop(self.labels[u])
            arrs.add((int(u), int(v)))
        self.arrows: frozenset[Arrow] = frozenset(arrs)
        out = [[] for _ in range(n)]
        inn = [[] for _ in range(n)]
        for u, v in sorted(arrs):
            out[u].append(v)
            inn[v].append(u)
        for lst in inn:
            lst.sort()
        self.out_adj: tuple[tuple[int, ...], ...] = tuple(tuple(x) for x in out)
        self.in_adj: tuple[tuple[int, ...], ...] = tuple(tuple(x) for x in inn)
        self.out_bits: tuple[int, ...] = tuple(sum(1 << w for w in x) for x in out)
        self.in_bits: tuple[int, ...] = tuple(sum(1 << w for w in x) for x in inn)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.arrows)

    @cached_property
    def sorted_arrows(self) -> tuple[Arrow, ...]:
        return tuple(sorted(self.arrows))

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Dense boolean adjacency matrix (read-only)."""
        adj = np.zeros((self.n, self.n), dtype=np.bool_)
        for u, v in self.arrows:
            adj[u, v] = True
        adj.setflags(write=False)
        return adj

    def has_arrow(self, u: int, v: int) -> bool:
        return bool(self.out_bits[u] >> v & 1)

    def vid(self, v) -> int:
        """Resolve a vertex id or label to an id."""
        if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
            if 0 <= v < self.n:
                return int(v)
            raise UnknownVertex(v)
        try:
            return self.index[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def label(self, v: int) -> str:
        return self.labels[v]

    def subset(self, vertices: Iterable) -> VertexSubset:
        return VertexSubset.from_ids((self.vid(v) for v in vertices), self.n)

    def all_vertices(self) -> VertexSubset:
        return VertexSubset((1 << self.n) - 1, self.n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.labels == other.labels and self.arrows == other.arrows

    def __hash__(self) -> int:
        return hash((self.labels, self.arrows))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={self.m})"


def from_edges(edge_list: Iterable[tuple[str, str]], isolated: Iterable[str] = ()) -> Digraph:
    """Build a digraph from label pairs; ids follow first appearance.

    Duplicate arrows collapse silently.  ``isolated`` tokens are added as
    vertices (after any that already appeared in an edge).
    """
    index: dict[str, int] = {}
    labels: list[str] = []

    def intern(tok) -> int:
        tok = str(tok)
        if tok not in index:
            index[tok] = len(labels)
            labels.append(tok)
        return index[tok]

    arrows = set()
    for u, v in edge_list:
        if str(u) == str(v):
            raise SelfLoop(str(u))
        arrows.add((intern(u), intern(v)))
    for tok in isolated:
        intern(tok)
    return Digraph(labels, arrows)


def out_neighborhood(g: Digraph, v) -> VertexSubset:
    return VertexSubset(g.out_bits[g.vid(v)], g.n)


def in_neighborhood(g: Digraph, v) -> VertexSubset:
    return VertexSubset(g.in_bits[g.vid(v)], g.n)


def induced_from_to(g: Digraph, A: VertexSubset, B: VertexSubset) -> Digraph:
    """Digraph on ``A | B`` keeping only arrows from ``A`` into ``B``.

    The result's ids are the members of ``A | B`` in ascending host id order,
    so ``sorted(A | B)[k]`` is the host id of vertex ``k``.
    """
    if not A.isdisjoint(B):
        raise OverlappingSets("induced_from_to needs disjoint vertex sets")
    keep = list(A | B)
    pos = {v: k for k, v in enumerate(keep)}
    arrows = [(pos[u], pos[v]) for u in A for v in _iter_bits(g.out_bits[u] & B.bits)]
    return Digraph([g.labels[v] for v in keep], arrows)


def edge_set_between(g: Digraph, A: VertexSubset, B: VertexSubset) -> set[Arrow]:
    return {(u, v) for u in A for v in _iter_bits(g.out_bits[u] & B.bits)}


def _undirected_neighbors(g: Digraph, v: int) -> list[int]:
    return sorted(set(g.out_adj[v]) | set(g.in_adj[v]))


def undirected_components(g: Digraph) -> list[VertexSubset]:
    """Weakly connected components, ordered by their minimum vertex id."""
    seen = 0
    comps = []
    for root in range(g.n):
        if seen >> root & 1:
            continue
        bits = 1 << root
        stack = [root]
        while stack:
            u = stack.pop()
            nb = (g.out_bits[u] | g.in_bits[u]) & ~bits
            bits |= nb
            stack.extend(_iter_bits(nb))
        seen |= bits
        comps.append(VertexSubset(bits, g.n))
    return comps


@dataclass(frozen=True)
class Forest:
    """Spanning forest of a host digraph, rooted at each component's min id.

    ``edges`` keep the host orientation.  ``parent[v]`` is -1 at roots.
    ``order`` is the BFS visiting order.
    """

    n: int
    edges: frozenset[Arrow]
    parent: tuple[int, ...]
    depth: tuple[int, ...]
    roots: tuple[int, ...]
    order: tuple[int, ...] = field(repr=False)

    def path_to_root(self, v: int) -> list[int]:
        out = [v]
        while self.parent[v] >= 0:
            v = self.parent[v]
            out.append(v)
        return out

    def tree_path(self, u: int, v: int) -> list[int]:
        """Vertex sequence of the forest path from ``u`` to ``v``."""
        up, vp = [u], [v]
        while self.depth[up[-1]] > self.depth[vp[-1]]:
            up.append(self.parent[up[-1]])
        while self.depth[vp[-1]] > self.depth[up[-1]]:
            vp.append(self.parent[vp[-1]])
        while up[-1] != vp[-1]:
            if self.parent[up[-1]] < 0:
                raise ValueError(f"{u} and {v} lie in different trees")
            up.append(self.parent[up[-1]])
            vp.append(self.parent[vp[-1]])
        return up + vp[-2::-1]

    def is_acyclic(self) -> bool:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True


def bfs_tree(g: Digraph, root: int, allowed: int | None = None):
    """BFS from ``root`` ignoring direction; neighbors visited in ascending id.

    Returns ``(parent, depth, order)`` dicts/lists restricted to the reached set.
    ``allowed`` optionally restricts the walk to a bitset of vertices.
    """
    mask = allowed if allowed is not None else (1 << g.n) - 1
    parent = {root: -1}
    depth = {root: 0}
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in _iter_bits((g.out_bits[u] | g.in_bits[u]) & mask):
            if w not in parent:
                parent[w] = u
                depth[w] = depth[u] + 1
                order.append(w)
                queue.append(w)
    return parent, depth, order


def spanning_forest(g: Digraph) -> Forest:
    parent = [-1] * g.n
    depth = [0] * g.n
    order: list[int] = []
    roots = []
    edges = set()
    seen = set()
    for root in range(g.n):
        if root in seen:
            continue
        roots.append(root)
        par, dep, ordr = bfs_tree(g, root)
        for v in ordr:
            seen.add(v)
            parent[v] = par[v]
            depth[v] = dep[v]
            p = par[v]
            if p >= 0:
                edges.add((p, v) if g.has_arrow(p, v) else (v, p))
        order.extend(ordr)
    return Forest(g.n, frozenset(edges), tuple(parent), tuple(depth), tuple(roots), tuple(order))


def fundamental_cycle(g: Digraph, f: Forest, e: Arrow) -> tuple[int, ...]:
    """The unique cycle through off-forest arrow ``e`` and forest edges.

    Starts at the tail of ``e`` and traverses ``e`` first; the closing edge
    back to the tail is implicit.
    """
    e = (int(e[0]), int(e[1]))
    if e not in g.arrows:
        raise UnknownEdge(e)
    u, v = e
    if e in f.edges:
        raise EdgeInForest(f"{e} belongs to the forest")
    back = f.tree_path(v, u)
    return (u,) + tuple(back[:-1])


__all__ = [
    "Arrow",
    "Digraph",
    "VertexSubset",
    "Forest",
    "from_edges",
    "out_neighborhood",
    "in_neighborhood",
    "induced_from_to",
    "edge_set_between",
    "undirected_components",
    "spanning_forest",
    "bfs_tree",
    "fundamental_cycle",
]
