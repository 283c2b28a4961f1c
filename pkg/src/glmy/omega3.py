"""Structural basis and dimension of the invariant 3-path space.

The space splits over ordered vertex pairs ``(a, b)``.  For one pair, with
``A = N+(a) - {b}`` and ``B = N-(b) - {a}``, the generators come in three
families:

* ``B0`` -- one alternating cycle chain per off-forest edge of the bipartite
  digraph ``H`` of arrows from ``A - B`` to ``B - A``;
* ``B1`` -- a single term ``e(a, i, j, b)`` per arrow ``i -> j`` from
  ``TA = N+(a) & (N-(b) | {b})`` to ``TB = (N+(a) | {a}) & N-(b)``;
* ``B2`` -- per component ``H_k``, the edges ``S_k`` joining it to ``TA``/``TB``;
  each edge other than the smallest yields an alternating walk chain.

``analyze_pair`` and the ``b*_generators`` functions are the readable
reference path.  ``omega3_basis`` and ``omega3_dim`` run the same
construction through the compiled kernels in ``_kernels`` and produce
identical output.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from . import _kernels
from .chains import Chain
from .digraph import (
    Arrow,
    Digraph,
    Forest,
    VertexSubset,
    bfs_tree,
    edge_set_between,
    fundamental_cycle,
    in_neighborhood,
    induced_from_to,
    out_neighborhood,
    spanning_forest,
    undirected_components,
)
from .errors import BudgetExceeded
from .fields import GF

DEFAULT_MAX_VERTICES = 2000

DELTA1 = "delta1"  # edge from (A - B)_k into TB
DELTA2 = "delta2"  # edge from TA into (B - A)_k

_KIND_NAMES = {_kernels.KIND_B0: "B0", _kernels.KIND_B1: "B1", _kernels.KIND_B2: "B2"}


@dataclass(frozen=True)
class PairAnalysis:
    a: int
    b: int
    A: VertexSubset
    B: VertexSubset
    AcapB: VertexSubset
    AminusB: VertexSubset
    BminusA: VertexSubset
    TA: VertexSubset
    TB: VertexSubset
    H: Digraph
    H_vertices: tuple[int, ...]
    components: tuple[VertexSubset, ...]
    forest: Forest
    off_forest_edges: tuple[Arrow, ...]
    b1_edges: tuple[Arrow, ...]
    S: tuple[tuple[tuple[Arrow, str], ...], ...]

    @property
    def t(self) -> int:
        return len(self.components)

    @property
    def h_edge_count(self) -> int:
        return self.H.m

    @property
    def h_vertex_count(self) -> int:
        return self.H.n

    def h_edges(self) -> list[Arrow]:
        """Arrows of H in host ids, lexicographic."""
        hv = self.H_vertices
        return sorted((hv[u], hv[v]) for u, v in self.H.arrows)


def analyze_pair(g: Digraph, a, b) -> PairAnalysis:
    a, b = g.vid(a), g.vid(b)
    out_a = out_neighborhood(g, a)
    in_b = in_neighborhood(g, b)
    A = out_a.without_vertex(b)
    B = in_b.without_vertex(a)
    amb, bma = A - B, B - A
    TA = out_a & in_b.with_vertex(b)
    TB = out_a.with_vertex(a) & in_b

    H = induced_from_to(g, amb, bma)
    hv = tuple(amb | bma)
    forest = spanning_forest(H)
    comps = tuple(VertexSubset.from_ids((hv[x] for x in c), g.n) for c in undirected_components(H))
    off = sorted((hv[u], hv[v]) for u, v in H.arrows if (u, v) not in forest.edges)

    S = []
    for comp in comps:
        tagged = [(e, DELTA1) for e in edge_set_between(g, amb & comp, TB)]
        tagged += [(e, DELTA2) for e in edge_set_between(g, TA, bma & comp)]
        S.append(tuple(sorted(tagged)))

    return PairAnalysis(
        a=a,
        b=b,
        A=A,
        B=B,
        AcapB=A & B,
        AminusB=amb,
        BminusA=bma,
        TA=TA,
        TB=TB,
        H=H,
        H_vertices=hv,
        components=comps,
        forest=forest,
        off_forest_edges=tuple(off),
        b1_edges=tuple(sorted(edge_set_between(g, TA, TB))),
        S=tuple(S),
    )


@dataclass(frozen=True)
class BasisElement:
    chain: Chain
    kind: str
    provenance: dict = field(compare=True)

    @property
    def pair(self) -> tuple[int, int]:
        p = self.chain.paths()[0]
        return p[0], p[-1]


def _oriented(u: int, v: int, amb: VertexSubset) -> Arrow:
    return (u, v) if u in amb else (v, u)


def _walk_chain(a: int, b: int, edges: list[Arrow], first_sign: int = 1) -> Chain:
    terms = []
    sign = first_sign
    for i, j in edges:
        terms.append(((a, i, j, b), sign))
        sign = -sign
    return Chain(3, terms, GF)


def b0_generators(g: Digraph, pa: PairAnalysis) -> list[BasisElement]:
    pos = {v: k for k, v in enumerate(pa.H_vertices)}
    hv = pa.H_vertices
    out = []
    for u, v in pa.off_forest_edges:
        cyc = [hv[x] for x in fundamental_cycle(pa.H, pa.forest, (pos[u], pos[v]))]
        L = len(cyc)
        edges = [_oriented(cyc[k], cyc[(k + 1) % L], pa.AminusB) for k in range(L)]
        out.append(BasisElement(_walk_chain(pa.a, pa.b, edges), "B0", {"edge": (u, v), "cycle": tuple(cyc)}))
    return out


def b1_generators(g: Digraph, pa: PairAnalysis) -> list[BasisElement]:
    return [
        BasisElement(Chain(3, {(pa.a, i, j, pa.b): 1}, GF), "B1", {"edge": (i, j)})
        for i, j in pa.b1_edges
    ]


def _h_endpoint(edge: Arrow, side: str) -> int:
    return edge[0] if side == DELTA1 else edge[1]


def b2_generators(g: Digraph, pa: PairAnalysis) -> list[BasisElement]:
    pos = {v: k for k, v in enumerate(pa.H_vertices)}
    hv = pa.H_vertices
    out = []
    for k, sk in enumerate(pa.S):
        if len(sk) < 2:
            continue
        base, base_side = sk[0]
        x = _h_endpoint(base, base_side)
        parent, _, _ = bfs_tree(pa.H, pos[x])
        for edge, side in sk[1:]:
            y = pos[_h_endpoint(edge, side)]
            back = [y]
            while parent[back[-1]] >= 0:
                back.append(parent[back[-1]])
            walk = [hv[w] for w in reversed(back)]
            mid = [_oriented(walk[t], walk[t + 1], pa.AminusB) for t in range(len(walk) - 1)]
            prov = {
                "component": k,
                "base": base,
                "base_side": base_side,
                "partner": edge,
                "partner_side": side,
                "walk": tuple(walk),
            }
            out.append(BasisElement(_walk_chain(pa.a, pa.b, [base] + mid + [edge]), "B2", prov))
    return out


def b0_count(pa: PairAnalysis) -> int:
    return pa.h_edge_count - pa.h_vertex_count + pa.t


def b2_count(pa: PairAnalysis) -> int:
    return sum(max(0, len(sk) - 1) for sk in pa.S)


def pair_dimension(pa: PairAnalysis) -> int:
    return b0_count(pa) + len(pa.b1_edges) + b2_count(pa)


def pair_generators(g: Digraph, a, b) -> list[BasisElement]:
    """Reference construction for one pair: B0, then B1, then B2."""
    pa = analyze_pair(g, a, b)
    return b0_generators(g, pa) + b1_generators(g, pa) + b2_generators(g, pa)


# ---------------------------------------------------------------------------
# kernel-backed assembly


@dataclass(frozen=True)
class PairBasis:
    a: int
    b: int
    elements: tuple[BasisElement, ...]

    @property
    def dim(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class Omega3Basis:
    graph: Digraph
    entries: dict[tuple[int, int], PairBasis]

    @property
    def total_dim(self) -> int:
        return sum(pb.dim for pb in self.entries.values())

    def pair_dim(self, a: int, b: int) -> int:
        pb = self.entries.get((a, b))
        return pb.dim if pb else 0

    def elements(self) -> Iterator[BasisElement]:
        for key in sorted(self.entries):
            yield from self.entries[key].elements

    def chains(self) -> list[Chain]:
        return [el.chain for el in self.elements()]

    def kind_counts(self) -> dict[str, int]:
        counts = {"B0": 0, "B1": 0, "B2": 0}
        for el in self.elements():
            counts[el.kind] += 1
        return counts


def _elements_from_arrays(a: int, b: int, arrays, amb: VertexSubset) -> tuple[BasisElement, ...]:
    kind, start, gcomp, ti, tj, sg = (x.tolist() for x in arrays)
    out = []
    for g_ in range(len(kind)):
        lo, hi = start[g_], start[g_ + 1]
        edges = list(zip(ti[lo:hi], tj[lo:hi]))
        chain = Chain(3, [((a, i, j, b), s) for (i, j), s in zip(edges, sg[lo:hi])], GF)
        name = _KIND_NAMES[kind[g_]]
        if name == "B0":
            cyc = [edges[0][0], edges[0][1]]
            for i, j in edges[1:-1]:
                cyc.append(j if cyc[-1] == i else i)
            prov = {"edge": edges[0], "cycle": tuple(cyc)}
        elif name == "B1":
            prov = {"edge": edges[0]}
        else:
            base, partner = edges[0], edges[-1]
            base_side = DELTA1 if base[0] in amb else DELTA2
            partner_side = DELTA1 if partner[0] in amb else DELTA2
            walk = [_h_endpoint(base, base_side)]
            for i, j in edges[1:-1]:
                walk.append(j if walk[-1] == i else i)
            prov = {
                "component": gcomp[g_],
                "base": base,
                "base_side": base_side,
                "partner": partner,
                "partner_side": partner_side,
                "walk": tuple(walk),
            }
        out.append(BasisElement(chain, name, prov))
    return tuple(out)


def _adjacency(g: Digraph) -> np.ndarray:
    return np.ascontiguousarray(g.adjacency)


def _all_pairs(g: Digraph) -> list[tuple[int, int]]:
    return [(a, b) for a in range(g.n) for b in range(g.n)]


def _resolve_pairs(g: Digraph, pairs: Iterable | None) -> list[tuple[int, int]]:
    if pairs is None:
        return _all_pairs(g)
    return sorted({(g.vid(a), g.vid(b)) for a, b in pairs})


def omega3_basis(
    g: Digraph,
    *,
    pairs: Iterable | None = None,
    jobs: int = 1,
    max_vertices: int | None = DEFAULT_MAX_VERTICES,
) -> Omega3Basis:
    """Basis of the invariant 3-path space, grouped by ordered pair.

    Pairs with no generators are left out of ``entries``.  ``jobs`` fans the
    pairs out over threads; the merge order is fixed, so output does not
    depend on it.
    """
    if max_vertices is not None and g.n > max_vertices:
        raise BudgetExceeded(g.n, max_vertices, "vertices")
    adj = _adjacency(g)
    todo = _resolve_pairs(g, pairs)

    def work(pair):
        a, b = pair
        arrays = _kernels.pair_basis(adj, a, b)
        if arrays[0].size == 0:
            return None
        amb = out_neighborhood(g, a).without_vertex(b) - in_neighborhood(g, b).without_vertex(a)
        return PairBasis(a, b, _elements_from_arrays(a, b, arrays, amb))

    if jobs > 1 and len(todo) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(work, todo, chunksize=max(1, len(todo) // (4 * jobs))))
    else:
        results = [work(p) for p in todo]
    return Omega3Basis(g, {(r.a, r.b): r for r in results if r is not None})


def pair_dimension_table(g: Digraph) -> np.ndarray:
    """``table[a, b]`` is the dimension of the (a, b) cluster space."""
    if g.n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    return _kernels.pair_dimension_table(_adjacency(g))


def omega3_dim(g: Digraph, *, pairs: Iterable | None = None) -> int:
    """Dimension from the counting formula alone; no chains are built."""
    if pairs is None:
        return int(pair_dimension_table(g).sum())
    return sum(pair_dimension(analyze_pair(g, a, b)) for a, b in _resolve_pairs(g, pairs))


def basis_size(g: Digraph) -> tuple[int, int]:
    """Build every generator in compact form; return ``(generators, terms)``.

    Nothing is retained, which makes this the timing target for large inputs.
    """
    if g.n == 0:
        return 0, 0
    gens, terms = _kernels.basis_size_sweep(_adjacency(g))
    return int(gens), int(terms)


__all__ = [
    "DEFAULT_MAX_VERTICES",
    "DELTA1",
    "DELTA2",
    "PairAnalysis",
    "BasisElement",
    "PairBasis",
    "Omega3Basis",
    "analyze_pair",
    "b0_generators",
    "b1_generators",
    "b2_generators",
    "b0_count",
    "b2_count",
    "pair_dimension",
    "pair_generators",
    "omega3_basis",
    "omega3_dim",
    "pair_dimension_table",
    "basis_size",
]
