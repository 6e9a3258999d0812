from __future__ import annotations

import json

from theoria import serialize
from theoria.core import Arrow, Renaming


def test_theory_round_trip(corpus_env):
    for p in corpus_env.theories.values():
        obj = json.loads(serialize.dumps(serialize.theory_to_json(p)))
        back = serialize.theory_from_json(obj)
        assert back.name == p.name
        assert back.decls == tuple(_nopos(d) for d in p.decls)


def _nopos(d):
    import dataclasses
    return dataclasses.replace(d, pos=None)


def test_schema(corpus_env):
    obj = serialize.theory_to_json(corpus_env["Semigroup"], {"file": "x"})
    assert set(obj) == {"name", "decls", "provenance"}
    kinds = [d["kind"] for d in obj["decls"]]
    assert kinds == ["type", "op", "axiom"]
    body = obj["decls"][2]["body"]
    assert body["node"] == "Forall" and [v[0] for v in body["vars"]] == ["x", "y", "z"]


def test_arrow_round_trip():
    a = Arrow("Carrier", "CarrierS", Renaming({"U": "S"}), "rename")
    assert serialize.arrow_from_json(serialize.arrow_to_json(a)) == a


def test_graph_is_closed(corpus_env):
    g = serialize.graph_to_json(corpus_env)
    nodes = set(g["nodes"])
    assert len(nodes) == len(corpus_env.theories)
    for e in g["edges"]:
        assert e["source"] in nodes and e["target"] in nodes


def test_dot(base_env):
    dot = serialize.graph_to_dot(base_env)
    assert dot.startswith("digraph theories {")
    assert '"Magma" -> "Semigroup" [label="extension"];' in dot
    assert '"Carrier" -> "CarrierS" [label="rename [U |-> S]"];' in dot
