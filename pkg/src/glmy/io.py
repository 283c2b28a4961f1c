"""Edge-list input, basis documents (JSON), and DOT export.

Edge-list grammar, one item per line::

    # comment to end of line
    u v        arrow u -> v
    w          isolated vertex w

Basis documents are canonical JSON: sorted keys, two-space indent, pairs
ordered by their labels, terms in chain order, trailing newline.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import jsonschema

from .chains import Chain
from .digraph import Digraph
from .errors import ParseError, SchemaError, SelfLoop
from .omega3 import BasisElement, Omega3Basis

TOOL_VERSION = "glmy 0.1.0"


def parse_edge_list(text: bytes | str) -> Digraph:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(0, f"input is not UTF-8: {exc}") from None
    # ids follow first appearance, isolated-vertex lines included
    index: dict[str, int] = {}
    arrows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        if len(toks) > 2:
            raise ParseError(lineno, f"expected 1 or 2 tokens, got {len(toks)}")
        if len(toks) == 2 and toks[0] == toks[1]:
            raise SelfLoop(toks[0], lineno)
        ids = [index.setdefault(t, len(index)) for t in toks]
        if len(ids) == 2:
            arrows.append((ids[0], ids[1]))
    return Digraph(list(index), arrows)


def format_edge_list(g: Digraph) -> str:
    """Arrows in id order, then one line per isolated vertex."""
    lines = [f"{g.labels[u]} {g.labels[v]}" for u, v in g.sorted_arrows]
    lines += [g.labels[v] for v in range(g.n) if not g.out_adj[v] and not g.in_adj[v]]
    return "".join(line + "\n" for line in lines)


def graph_digest(g: Digraph) -> str:
    """SHA-256 over the arrows as ``u<TAB>v<LF>`` lines sorted by label."""
    lines = sorted((g.labels[u], g.labels[v]) for u, v in g.arrows)
    payload = "".join(f"{u}\t{v}\n" for u, v in lines).encode("utf-8")
    return "sha256:" + hashlib.sha256(payload).hexdigest()


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(g: Digraph) -> bytes:
    lines = ["digraph {"]
    for u, v in g.sorted_arrows:
        lines.append(f"  {_dot_quote(g.labels[u])} -> {_dot_quote(g.labels[v])};")
    for v in range(g.n):
        if not g.out_adj[v] and not g.in_adj[v]:
            lines.append(f"  {_dot_quote(g.labels[v])};")
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# basis documents


@dataclass(frozen=True)
class Term:
    path: tuple[str, ...]
    coeff: int


@dataclass(frozen=True)
class Generator:
    kind: str
    terms: tuple[Term, ...]
    provenance: dict = field(default_factory=dict)


@dataclass(frozen=True)
class PairRecord:
    a: str
    b: str
    dim: int
    generators: tuple[Generator, ...]


@dataclass(frozen=True)
class GraphSummary:
    n: int
    m: int
    digest: str


@dataclass(frozen=True)
class BasisDocument:
    graph: GraphSummary
    field: str
    pairs: tuple[PairRecord, ...]
    total_dim: int
    version: str = TOOL_VERSION


_EDGE = {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2}
_SEQ = {"type": "array", "items": {"type": "string"}}

SCHEMA = {
    "type": "object",
    "required": ["graph", "field", "pairs", "total_dim", "version"],
    "additionalProperties": False,
    "properties": {
        "graph": {
            "type": "object",
            "required": ["n", "m", "digest"],
            "additionalProperties": False,
            "properties": {
                "n": {"type": "integer", "minimum": 0},
                "m": {"type": "integer", "minimum": 0},
                "digest": {"type": "string"},
            },
        },
        "field": {"type": "string"},
        "total_dim": {"type": "integer", "minimum": 0},
        "version": {"type": "string"},
        "pairs": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["a", "b", "dim", "generators"],
                "additionalProperties": False,
                "properties": {
                    "a": {"type": "string"},
                    "b": {"type": "string"},
                    "dim": {"type": "integer", "minimum": 0},
                    "generators": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["kind", "terms", "provenance"],
                            "additionalProperties": False,
                            "properties": {
                                "kind": {"enum": ["B0", "B1", "B2"]},
                                "terms": {
                                    "type": "array",
                                    "minItems": 1,
                                    "items": {
                                        "type": "object",
                                        "required": ["path", "coeff"],
                                        "additionalProperties": False,
                                        "properties": {
                                            "path": {**_SEQ, "minItems": 4, "maxItems": 4},
                                            "coeff": {"enum": [-1, 1]},
                                        },
                                    },
                                },
                                "provenance": {
                                    "type": "object",
                                    "properties": {
                                        "edge": _EDGE,
                                        "cycle": _SEQ,
                                        "component": {"type": "integer", "minimum": 0},
                                        "base": _EDGE,
                                        "partner": _EDGE,
                                        "base_side": {"enum": ["delta1", "delta2"]},
                                        "partner_side": {"enum": ["delta1", "delta2"]},
                                        "walk": _SEQ,
                                    },
                                    "additionalProperties": False,
                                },
                            },
                        },
                    },
                },
            },
        },
    },
}


def _prov_to_labels(g: Digraph, prov: dict) -> dict:
    out = {}
    for key, val in prov.items():
        if key in ("edge", "base", "partner", "cycle", "walk"):
            out[key] = [g.labels[v] for v in val]
        else:
            out[key] = val
    return out


def _generator_record(g: Digraph, el: BasisElement) -> Generator:
    terms = tuple(Term(tuple(g.labels[v] for v in p), int(c)) for p, c in el.chain.items())
    return Generator(el.kind, terms, _prov_to_labels(g, el.provenance))


def basis_document(basis: Omega3Basis, field: str = "gf:32749") -> BasisDocument:
    g = basis.graph
    records = []
    for (a, b), pb in basis.entries.items():
        gens = tuple(_generator_record(g, el) for el in pb.elements)
        records.append(PairRecord(g.labels[a], g.labels[b], pb.dim, gens))
    records.sort(key=lambda r: (r.a, r.b))
    return BasisDocument(
        graph=GraphSummary(g.n, g.m, graph_digest(g)),
        field=field,
        pairs=tuple(records),
        total_dim=sum(r.dim for r in records),
    )


def document_to_json(doc: BasisDocument) -> dict:
    return {
        "graph": {"n": doc.graph.n, "m": doc.graph.m, "digest": doc.graph.digest},
        "field": doc.field,
        "total_dim": doc.total_dim,
        "version": doc.version,
        "pairs": [
            {
                "a": r.a,
                "b": r.b,
                "dim": r.dim,
                "generators": [
                    {
                        "kind": gen.kind,
                        "terms": [{"path": list(t.path), "coeff": t.coeff} for t in gen.terms],
                        "provenance": gen.provenance,
                    }
                    for gen in r.generators
                ],
            }
            for r in doc.pairs
        ],
    }


def write_basis(doc: BasisDocument) -> bytes:
    text = json.dumps(document_to_json(doc), sort_keys=True, indent=2, ensure_ascii=False)
    return (text + "\n").encode("utf-8")


def read_basis(data: bytes | str) -> BasisDocument:
    try:
        obj = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise SchemaError(f"not valid JSON: {exc}") from None
    try:
        jsonschema.validate(obj, SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path)
        raise SchemaError(f"{where or '<root>'}: {exc.message}") from None
    pairs = []
    for r in obj["pairs"]:
        gens = tuple(
            Generator(
                gen["kind"],
                tuple(Term(tuple(t["path"]), t["coeff"]) for t in gen["terms"]),
                gen["provenance"],
            )
            for gen in r["generators"]
        )
        pairs.append(PairRecord(r["a"], r["b"], r["dim"], gens))
    doc = BasisDocument(
        graph=GraphSummary(**obj["graph"]),
        field=obj["field"],
        pairs=tuple(pairs),
        total_dim=obj["total_dim"],
        version=obj["version"],
    )
    if doc.total_dim != sum(r.dim for r in doc.pairs):
        raise SchemaError("total_dim does not equal the sum of pair dims")
    return doc


def generator_chain(g: Digraph, gen: Generator) -> Chain:
    """Rebuild a generator's chain on ``g`` (labels resolved to ids)."""
    return Chain(3, [(tuple(g.vid(x) for x in t.path), t.coeff) for t in gen.terms])


__all__ = [
    "TOOL_VERSION",
    "parse_edge_list",
    "format_edge_list",
    "graph_digest",
    "export_dot",
    "Term",
    "Generator",
    "PairRecord",
    "GraphSummary",
    "BasisDocument",
    "SCHEMA",
    "basis_document",
    "document_to_json",
    "write_basis",
    "read_basis",
    "generator_chain",
]
