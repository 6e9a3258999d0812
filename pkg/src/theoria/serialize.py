"""JSON and DOT encodings of presentations, arrows and the theory graph.

Syntax trees are encoded as nested objects tagged by ``"node"`` with
their fields in order; JSON arrays stand for tuples.  So an axiom body
``forall x : U. x = x`` becomes::

    {"node": "Forall", "vars": [["x", {"node": "SortRef", "name": "U"}]],
     "body": {"node": "Equal", ...}}
"""

from __future__ import annotations

import dataclasses
import json

from theoria import syntax
from theoria.core import Arrow, Renaming
from theoria.syntax import (
    AxiomDecl, DefDecl, InductiveDecl, OpDecl, TheoryPresentation, TypeDecl,
    TypeDefDecl,
)

_NODES = {cls.__name__: cls for cls in (
    syntax.SortRef, syntax.FunctionType, syntax.PredicateType,
    syntax.TypeKind, syntax.RecordType, syntax.DataType, syntax.ProofOf,
    syntax.FieldRef, syntax.TypeCall, syntax.TypeFrom, syntax.TermsOf,
    syntax.Var, syntax.Apply, syntax.Branch, syntax.Case, syntax.Equal,
    syntax.Forall, syntax.Not, syntax.And, syntax.Or, syntax.Implies,
    syntax.DefinedIn, syntax.Subtype, syntax.PropertyMacro, syntax.PredApp,
    syntax.Clause,
)}

_DECL_KINDS = {TypeDecl: "type", OpDecl: "op", AxiomDecl: "axiom",
               InductiveDecl: "inductive", DefDecl: "def",
               TypeDefDecl: "typedef"}
_KIND_CLASSES = {v: k for k, v in _DECL_KINDS.items()}


def to_tree(node):
    if isinstance(node, tuple):
        return [to_tree(x) for x in node]
    if isinstance(node, str) or node is None:
        return node
    name = type(node).__name__
    if name not in _NODES:
        raise TypeError(f"cannot encode {node!r}")
    out = {"node": name}
    for f in dataclasses.fields(node):
        out[f.name] = to_tree(getattr(node, f.name))
    return out


def from_tree(tree):
    if isinstance(tree, list):
        return tuple(from_tree(x) for x in tree)
    if isinstance(tree, dict):
        cls = _NODES[tree["node"]]
        return cls(**{k: from_tree(v) for k, v in tree.items() if k != "node"})
    return tree


def decl_to_json(d) -> dict:
    out = {"kind": _DECL_KINDS[type(d)], "name": d.name}
    for f in dataclasses.fields(d):
        if f.name in ("name", "pos"):
            continue
        value = getattr(d, f.name)
        if f.name == "origin":
            if value is not None:
                out["origin"] = value
            continue
        out[f.name] = to_tree(value)
    return out


def decl_from_json(obj: dict):
    cls = _KIND_CLASSES[obj["kind"]]
    fields = {k: (v if k in ("name", "origin") else from_tree(v))
              for k, v in obj.items() if k != "kind"}
    return cls(**fields)


def theory_to_json(p: TheoryPresentation, provenance=None) -> dict:
    return {"name": p.name, "decls": [decl_to_json(d) for d in p.decls],
            "provenance": provenance}


def theory_from_json(obj: dict) -> TheoryPresentation:
    return TheoryPresentation(obj["name"], tuple(
        decl_from_json(d) for d in obj["decls"]))


def arrow_to_json(a: Arrow) -> dict:
    return {"source": a.source, "target": a.target,
            "renaming": dict(a.renaming.pairs), "provenance": a.provenance}


def arrow_from_json(obj: dict) -> Arrow:
    return Arrow(obj["source"], obj["target"], Renaming(obj["renaming"]),
                 obj["provenance"])


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# graph


def graph_to_json(env) -> dict:
    return {"nodes": list(env.theories),
            "edges": [arrow_to_json(a) for a in env.arrows]}


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(env) -> str:
    lines = ["digraph theories {", "  rankdir=BT;"]
    for name in env.theories:
        lines.append(f"  {_quote(name)};")
    for a in env.arrows:
        label = a.provenance + (f" {a.renaming}" if a.renaming else "")
        lines.append(f"  {_quote(a.source)} -> {_quote(a.target)} "
                     f"[label={_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
