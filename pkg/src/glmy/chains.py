"""Elementary paths, exact chains, the boundary operator and induced maps.

Chains live in the regular quotient: any path with two equal consecutive
vertices is zero, so such faces and images are dropped as they arise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .digraph import Digraph
from .errors import DegreeMismatch, NotACluster, NotAMorphism, UnknownVertex
from .fields import GF, Field

ElemPath = tuple[int, ...]


def is_regular(path: ElemPath) -> bool:
    return all(path[k] != path[k + 1] for k in range(len(path) - 1))


class Chain:
    """Sparse linear combination of elementary p-paths over an exact field.

    Terms are kept in lexicographic order of their vertex sequences and no
    zero coefficient is ever stored.
    """

    __slots__ = ("degree", "field", "_terms")

    def __init__(self, degree: int, terms: Mapping[ElemPath, object] | Iterable = (), field: Field = GF):
        self.degree = degree
        self.field = field
        acc: dict[ElemPath, object] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for path, coeff in items:
            path = tuple(int(v) for v in path)
            if len(path) != degree + 1:
                raise DegreeMismatch(f"path {path} has degree {len(path) - 1}, chain has {degree}")
            acc[path] = acc.get(path, 0) + coeff
        self._terms = {p: c for p in sorted(acc) if (c := field(acc[p])) != 0}

    @classmethod
    def elementary(cls, path: Iterable[int], coeff=1, field: Field = GF) -> "Chain":
        path = tuple(path)
        return cls(len(path) - 1, {path: coeff}, field)

    @classmethod
    def zero(cls, degree: int, field: Field = GF) -> "Chain":
        return cls(degree, {}, field)

    def items(self) -> Iterator[tuple[ElemPath, object]]:
        return iter(self._terms.items())

    def paths(self) -> tuple[ElemPath, ...]:
        return tuple(self._terms)

    def coeff(self, path: Iterable[int]):
        return self._terms.get(tuple(path), self.field(0))

    def vertices(self) -> set[int]:
        return {v for p in self._terms for v in p}

    def with_field(self, field: Field) -> "Chain":
        return Chain(self.degree, self._terms, field)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _compat(self, other: "Chain"):
        if not isinstance(other, Chain):
            raise TypeError("expected a Chain")
        if other.degree != self.degree:
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree}")
        if other.field != self.field:
            raise ValueError("chains over different fields")

    def __add__(self, other: "Chain") -> "Chain":
        self._compat(other)
        return Chain(self.degree, list(self.items()) + list(other.items()), self.field)

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __neg__(self) -> "Chain":
        return Chain(self.degree, {p: -c for p, c in self.items()}, self.field)

    def __mul__(self, scalar) -> "Chain":
        return Chain(self.degree, {p: c * scalar for p, c in self.items()}, self.field)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return self.degree == other.degree and self.field == other.field and self._terms == other._terms

    def __hash__(self):
        return hash((self.degree, self.field, tuple(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return f"Chain({self.degree}, 0)"
        body = " ".join(f"{'+' if c > 0 else '-'}{abs(c) if abs(c) != 1 else ''}e{list(p)}" for p, c in self.items())
        return f"Chain({self.degree}, {body})"

    def format(self, g: Digraph) -> str:
        """Human-readable form using vertex labels."""
        if not self._terms:
            return "0"
        parts = []
        for p, c in self.items():
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            parts.append(f"{'-' if c < 0 else '+'} {mag}e_{'.'.join(g.labels[v] for v in p)}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else s


def boundary(c: Chain) -> Chain:
    """Alternating face sum with irregular faces dropped.

    Degree 0 chains map to the empty chain of degree -1.
    """
    if c.degree <= 0:
        return Chain.zero(c.degree - 1, c.field)
    acc: dict[ElemPath, object] = {}
    for path, coeff in c.items():
        for q in range(len(path)):
            face = path[:q] + path[q + 1 :]
            if not is_regular(face):
                continue
            acc[face] = acc.get(face, 0) + (coeff if q % 2 == 0 else -coeff)
    return Chain(c.degree - 1, acc, c.field)


def _check_vertices(path: ElemPath, g: Digraph):
    for v in path:
        if not (isinstance(v, int) and 0 <= v < g.n):
            raise UnknownVertex(v)


def is_allowed(path: Iterable[int], g: Digraph) -> bool:
    path = tuple(path)
    _check_vertices(path, g)
    return all(g.out_bits[path[k]] >> path[k + 1] & 1 for k in range(len(path) - 1))


def allowed_paths(g: Digraph, p: int, endpoints: tuple | None = None) -> list[ElemPath]:
    """All allowed p-paths in lexicographic order, optionally with fixed ends."""
    if p < 0:
        raise ValueError("degree must be non-negative")
    if endpoints is None:
        starts = range(g.n)
        last = None
    else:
        a, b = g.vid(endpoints[0]), g.vid(endpoints[1])
        starts = (a,)
        last = b
    out: list[ElemPath] = []
    out_adj = g.out_adj

    def extend(prefix: list[int]):
        k = len(prefix) - 1
        if k == p:
            if last is None or prefix[-1] == last:
                out.append(tuple(prefix))
            return
        for w in out_adj[prefix[-1]]:
            if k == p - 1 and last is not None and w != last:
                continue
            prefix.append(w)
            extend(prefix)
            prefix.pop()

    for s in starts:
        if p == 0 and last is not None and s != last:
            continue
        extend([s])
    return out


def is_invariant(c: Chain, g: Digraph) -> bool:
    """True iff ``c`` and its boundary are both allowed."""
    if not all(is_allowed(p, g) for p in c.paths()):
        return False
    return all(is_allowed(p, g) for p in boundary(c).paths())


def cluster_decompose(c: Chain) -> dict[tuple[int, int], Chain]:
    """Split ``c`` by (first vertex, last vertex)."""
    groups: dict[tuple[int, int], list] = {}
    for path, coeff in c.items():
        groups.setdefault((path[0], path[-1]), []).append((path, coeff))
    return {k: Chain(c.degree, groups[k], c.field) for k in sorted(groups)}


def is_cluster(c: Chain) -> bool:
    return len({(p[0], p[-1]) for p in c.paths()}) <= 1


def e_omega(c: Chain) -> Chain:
    """Project an (a, b)-cluster of 3-paths onto its middle edges."""
    if c.degree != 3:
        raise DegreeMismatch(f"e_omega needs degree 3, got {c.degree}")
    if not is_cluster(c):
        raise NotACluster("chain has terms with different endpoints")
    return Chain(1, [((p[1], p[2]), coeff) for p, coeff in c.items()], c.field)


@dataclass(frozen=True)
class DigraphMorphism:
    """Vertex map ``mapping[u]`` (target id) sending arrows to arrows or points."""

    source: Digraph
    target: Digraph
    mapping: tuple[int, ...]

    def __post_init__(self):
        mp = tuple(int(x) for x in self.mapping)
        object.__setattr__(self, "mapping", mp)
        if len(mp) != self.source.n:
            raise NotAMorphism("vertex map is not total on the source")
        for x in mp:
            if not 0 <= x < self.target.n:
                raise NotAMorphism(f"image {x} is not a target vertex")
        for u, v in self.source.arrows:
            fu, fv = mp[u], mp[v]
            if fu != fv and not self.target.has_arrow(fu, fv):
                raise NotAMorphism(
                    f"arrow {self.source.labels[u]}->{self.source.labels[v]} maps to a non-arrow"
                )

    @classmethod
    def from_labels(cls, source: Digraph, target: Digraph, mapping: Mapping[str, str]) -> "DigraphMorphism":
        return cls(source, target, tuple(target.vid(mapping[lab]) for lab in source.labels))

    @classmethod
    def identity(cls, g: Digraph) -> "DigraphMorphism":
        return cls(g, g, tuple(range(g.n)))

    def __call__(self, v: int) -> int:
        return self.mapping[v]


def induced_map(f: DigraphMorphism, c: Chain) -> Chain:
    """Push ``c`` forward along ``f``; irregular images vanish."""
    acc = []
    for path, coeff in c.items():
        for v in path:
            if not 0 <= v < f.source.n:
                raise UnknownVertex(v)
        img = tuple(f.mapping[v] for v in path)
        if is_regular(img):
            acc.append((img, coeff))
    return Chain(c.degree, acc, c.field)


def is_merging_map(f: DigraphMorphism) -> bool:
    """Surjective, and target arrows are exactly the projected arrows between blocks."""
    if set(f.mapping) != set(range(f.target.n)):
        return False
    projected = {(f.mapping[u], f.mapping[v]) for u, v in f.source.arrows if f.mapping[u] != f.mapping[v]}
    return projected == set(f.target.arrows)


def chain_from_labels(g: Digraph, terms: Iterable[tuple[Iterable[str], object]], field: Field = GF) -> Chain:
    """Build a chain from ``(label sequence, coeff)`` pairs."""
    items = [(tuple(g.vid(x) for x in path), coeff) for path, coeff in terms]
    if not items:
        raise ValueError("need at least one term to infer the degree")
    return Chain(len(items[0][0]) - 1, items, field)


__all__ = [
    "ElemPath",
    "Chain",
    "DigraphMorphism",
    "is_regular",
    "boundary",
    "is_allowed",
    "allowed_paths",
    "is_invariant",
    "cluster_decompose",
    "is_cluster",
    "e_omega",
    "induced_map",
    "is_merging_map",
    "chain_from_labels",
]
