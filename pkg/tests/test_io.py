import hashlib
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from glmy import Digraph, omega3_basis, trapezohedron
from glmy.errors import ParseError, SchemaError, SelfLoop
from glmy.generators import RandomSpec, random_digraph
from glmy.io import (
    basis_document,
    export_dot,
    format_edge_list,
    generator_chain,
    graph_digest,
    parse_edge_list,
    read_basis,
    write_basis,
)

T2_DOC_SHA256 = "9a996b3d1cb386a525e8bfbccb1e5c0b411dcc5922e056e433c735f3bc71b28f"


def test_parse_two_cycle():
    g = parse_edge_list(b"a b\nb a\n")
    assert (g.n, g.m) == (2, 2)


def test_parse_comments_and_isolated():
    g = parse_edge_list("# comment\na b\n\nc\n")
    assert g.labels == ("a", "b", "c")
    assert g.m == 1
    g = parse_edge_list("x y  # trailing\n  \n\ty\tz\n")
    assert g.labels == ("x", "y", "z") and g.m == 2


def test_parse_errors():
    with pytest.raises(SelfLoop) as info:
        parse_edge_list("a a\n")
    assert info.value.line == 1
    with pytest.raises(ParseError) as info:
        parse_edge_list("a b\nb c d\n")
    assert info.value.line == 2
    with pytest.raises(ParseError):
        parse_edge_list(b"\xff\xfe a b")


def test_parse_utf8_tokens():
    g = parse_edge_list("α β\nβ γ\n".encode())
    assert g.labels == ("α", "β", "γ")


def test_emit_then_parse_roundtrip():
    for seed in range(60):
        g = random_digraph(RandomSpec(1 + seed % 9, 0.25, seed))
        h = parse_edge_list(format_edge_list(g))
        assert {(g.labels[u], g.labels[v]) for u, v in g.arrows} == {(h.labels[u], h.labels[v]) for u, v in h.arrows}
        assert set(g.labels) == set(h.labels)


@given(st.lists(st.tuples(st.sampled_from("abcdefg"), st.sampled_from("abcdefg")), max_size=15))
def test_roundtrip_property(pairs):
    edges = [(u, v) for u, v in pairs if u != v]
    text = "".join(f"{u} {v}\n" for u, v in edges)
    g = parse_edge_list(text)
    again = parse_edge_list(format_edge_list(g))

    def named(h):
        return {(h.labels[u], h.labels[v]) for u, v in h.arrows}

    assert named(again) == named(g) == set(edges)
    assert set(again.labels) == set(g.labels)


def test_digest_ignores_id_order():
    g1 = parse_edge_list("a b\nc a\n")
    g2 = parse_edge_list("c a\na b\n")
    assert g1.labels != g2.labels
    assert graph_digest(g1) == graph_digest(g2)
    assert graph_digest(g1) != graph_digest(parse_edge_list("a b\n"))


def test_dot_export():
    two = parse_edge_list("a b\nb a\n")
    assert export_dot(two) == b'digraph {\n  "a" -> "b";\n  "b" -> "a";\n}\n'
    assert export_dot(Digraph([], [])) == b"digraph {\n}\n"
    t2 = export_dot(trapezohedron(2)).decode()
    assert t2.count("->") == 8
    mentioned = {tok for line in t2.splitlines() for tok in line.split('"')[1::2]}
    assert len(mentioned) == 6
    iso = export_dot(parse_edge_list('x\nq"r s\n')).decode()
    assert '  "x";' in iso and '"q\\"r" -> "s"' in iso


def test_t2_document():
    doc = basis_document(omega3_basis(trapezohedron(2)))
    assert doc.total_dim == 1
    (rec,) = doc.pairs
    assert (rec.a, rec.b, rec.dim) == ("a", "b", 1)
    (gen,) = rec.generators
    assert gen.kind == "B0" and len(gen.terms) == 4
    assert all(len(t.path) == 4 and t.coeff in (1, -1) for t in gen.terms)
    data = write_basis(doc)
    assert hashlib.sha256(data).hexdigest() == T2_DOC_SHA256


def test_empty_document():
    doc = basis_document(omega3_basis(Digraph([], [])))
    assert doc.total_dim == 0 and doc.pairs == ()
    assert read_basis(write_basis(doc)) == doc


def test_document_roundtrip_and_canonical_json(sweep_graphs):
    for _, g in sweep_graphs[::20]:
        doc = basis_document(omega3_basis(g))
        data = write_basis(doc)
        back = read_basis(data)
        assert back == doc
        assert write_basis(back) == data
        obj = json.loads(data)
        assert json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n" == data.decode()
        keys = [(p["a"], p["b"]) for p in obj["pairs"]]
        assert keys == sorted(keys)
        for rec in back.pairs:
            for gen in rec.generators:
                c = generator_chain(g, gen)
                assert [t.coeff for t in gen.terms] == [int(v) for _, v in c.items()]


def test_schema_errors():
    good = json.loads(write_basis(basis_document(omega3_basis(trapezohedron(2)))))
    with pytest.raises(SchemaError):
        read_basis(b"{not json")
    bad = json.loads(json.dumps(good))
    bad["pairs"][0]["generators"][0]["terms"][0]["coeff"] = 2
    with pytest.raises(SchemaError):
        read_basis(json.dumps(bad))
    bad = json.loads(json.dumps(good))
    bad["pairs"][0]["generators"][0]["terms"][0]["path"] = ["a", "b"]
    with pytest.raises(SchemaError):
        read_basis(json.dumps(bad))
    bad = json.loads(json.dumps(good))
    bad["total_dim"] = 5
    with pytest.raises(SchemaError):
        read_basis(json.dumps(bad))
    bad = json.loads(json.dumps(good))
    del bad["version"]
    with pytest.raises(SchemaError):
        read_basis(json.dumps(bad))
