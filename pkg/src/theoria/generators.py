"""Universal-algebra constructions derived mechanically from a theory.

Each construction is a :class:`Visitor` run by :func:`traverse_theory`:
the visitor says what every kind of declaration turns into, and the
traversal folds the results in declaration order.
"""

from __future__ import annotations

import dataclasses
from typing import Mapping

from theoria.core import Renaming, rename_node, rewrite
from theoria.errors import ForeignSort, NotSingleSorted, UnsupportedDeclaration
from theoria.syntax import (
    Apply, AxiomDecl, DataType, DefDecl, DefinedIn, Equal, FieldRef, Forall,
    FunctionType, Implies, InductiveDecl, OpDecl, PredApp, PredicateType,
    ProofOf, RecordType, SortRef, Subtype, TermsOf, TheoryPresentation,
    TypeDecl, TypeDefDecl, TypeFrom, TypeKind, Var,
)

KINDS = {"record": "TypeFrom", "terms": "TermAlgebra",
         "hom": "Homomorphism", "sub": "Substructure"}


# ---------------------------------------------------------------------------
# traversal


class Visitor:
    """Identity transformation; subclasses override per declaration kind.

    Every hook returns a list of output items.
    """

    def start(self, p: TheoryPresentation) -> list:
        return []

    def type_decl(self, d: TypeDecl) -> list:
        return [d]

    def op_decl(self, d: OpDecl) -> list:
        return [d]

    def axiom(self, d: AxiomDecl) -> list:
        return [d]

    def inductive(self, d: InductiveDecl) -> list:
        return [d]

    def definition(self, d: DefDecl) -> list:
        return [d]

    def typedef(self, d: TypeDefDecl) -> list:
        return [d]

    def finish(self, p: TheoryPresentation, items: list):
        return TheoryPresentation(p.name, tuple(items))


_HOOKS = ((TypeDecl, "type_decl"), (OpDecl, "op_decl"), (AxiomDecl, "axiom"),
          (InductiveDecl, "inductive"), (DefDecl, "definition"),
          (TypeDefDecl, "typedef"))


def traverse_theory(p: TheoryPresentation, visitor: Visitor):
    items = list(visitor.start(p))
    for d in p.decls:
        for kind, hook in _HOOKS:
            if isinstance(d, kind):
                items.extend(getattr(visitor, hook)(d))
                break
        else:
            raise TypeError(f"not a declaration: {d!r}")
    return visitor.finish(p, items)


class _AbstractOnly(Visitor):
    """Rejects concrete declarations."""

    def inductive(self, d):
        raise UnsupportedDeclaration(
            f"inductive type {d.name!r} is not supported by this generator",
            d.pos)

    def definition(self, d):
        raise UnsupportedDeclaration(
            f"definition {d.name!r} is not supported by this generator", d.pos)

    typedef = definition


def _sorts(p: TheoryPresentation) -> list:
    return [d.name for d in p.decls if isinstance(d, TypeDecl)]


def _single_sort(p: TheoryPresentation) -> str:
    sorts = _sorts(p)
    if len(sorts) != 1:
        raise NotSingleSorted(f"{p.name} declares {len(sorts)} sorts; "
                              "exactly one is required")
    return sorts[0]


def _var_names(n: int) -> list:
    return ["x", "y", "z"][:n] if n <= 3 else [f"x{k}" for k in range(1, n + 1)]


# ---------------------------------------------------------------------------
# record type of models


class RecordVisitor(_AbstractOnly):
    def type_decl(self, d):
        return [(d.name, TypeKind())]

    def op_decl(self, d):
        return [(d.name, d.type)]

    def axiom(self, d):
        return [(d.name, ProofOf(d.body))]

    def finish(self, p, items):
        return RecordType(tuple(items))


def gen_record_type(p: TheoryPresentation) -> RecordType:
    return traverse_theory(p, RecordVisitor())


# ---------------------------------------------------------------------------
# term algebra


class TermAlgebraVisitor(_AbstractOnly):
    binder = "X"

    def start(self, p):
        gen_record_type(p)  # rejects concrete declarations first
        self.sort = _single_sort(p)
        self.theory = p.name
        return []

    def type_decl(self, d):
        return []

    def op_decl(self, d):
        if isinstance(d.type, PredicateType):
            return []  # relations do not build terms

        def step(node):
            if isinstance(node, SortRef):
                if node.name != self.sort:
                    raise ForeignSort(f"{d.name} in {self.theory} mentions "
                                      f"sort {node.name}", d.pos)
                return SortRef(self.binder)
            if not isinstance(node, (FunctionType, tuple)):
                raise ForeignSort(f"{d.name} has an unsupported type", d.pos)
            return node

        return [("#" + d.name, rewrite(d.type, step))]

    def axiom(self, d):
        return []

    def finish(self, p, items):
        return DataType(self.binder, tuple(items))


def gen_term_algebra(p: TheoryPresentation) -> DataType:
    return traverse_theory(p, TermAlgebraVisitor())


# ---------------------------------------------------------------------------
# homomorphisms


def model_type_name(p: TheoryPresentation) -> str:
    return f"{p.name}Type"


def _model_typedef(p: TheoryPresentation) -> TypeDefDecl:
    return TypeDefDecl(model_type_name(p), gen_record_type(p), p.name)


def _in(model: str, name: str):
    return Apply(FieldRef(model, name), ())


class HomomorphismVisitor(_AbstractOnly):
    def start(self, p):
        gen_record_type(p)
        sorts = _sorts(p)
        self.maps = {s: ("f" if len(sorts) == 1 else f"f_{s}") for s in sorts}
        ty = SortRef(model_type_name(p))
        out = [_model_typedef(p), OpDecl("A", ty), OpDecl("B", ty)]
        out += [OpDecl(f, FunctionType((FieldRef("A", s),), FieldRef("B", s)))
                for s, f in self.maps.items()]
        return out

    def type_decl(self, d):
        return []

    def axiom(self, d):
        return []

    def _map(self, sort, term):
        return Apply(self.maps[sort.name], (term,))

    def op_decl(self, d):
        t = d.type
        if isinstance(t, PredicateType):
            xs = _var_names(len(t.args))
            body = Implies(
                PredApp(FieldRef("A", d.name), tuple(Var(x) for x in xs)),
                PredApp(FieldRef("B", d.name),
                        tuple(self._map(s, Var(x)) for s, x in zip(t.args, xs))))
            return [AxiomDecl(f"pres_{d.name}", _close(xs, t.args, body))]
        if isinstance(t, FunctionType):
            xs = _var_names(len(t.args))
            lhs = self._map(t.result, Apply(FieldRef("A", d.name),
                                            tuple(Var(x) for x in xs)))
            rhs = Apply(FieldRef("B", d.name),
                        tuple(self._map(s, Var(x)) for s, x in zip(t.args, xs)))
            return [AxiomDecl(f"pres_{d.name}",
                              _close(xs, t.args, Equal(lhs, rhs)))]
        # a constant
        return [AxiomDecl(f"pres_{d.name}",
                          Equal(self._map(t, _in("A", d.name)),
                                _in("B", d.name)))]


def _close(xs, sorts, body):
    return Forall(tuple((x, FieldRef("A", s.name)) for x, s in zip(xs, sorts)),
                  body)


def gen_homomorphism(p: TheoryPresentation, name: str | None = None):
    q = traverse_theory(p, HomomorphismVisitor())
    return q.with_name(name or f"{p.name}H")


# ---------------------------------------------------------------------------
# substructures


class SubstructureVisitor(_AbstractOnly):
    carrier = "V"

    def start(self, p):
        gen_record_type(p)
        self.sort = _single_sort(p)
        v = self.carrier
        return [_model_typedef(p), OpDecl("A", SortRef(model_type_name(p))),
                TypeDecl(v),
                AxiomDecl(f"subtype_{v}",
                          Subtype(SortRef(v), FieldRef("A", self.sort)))]

    def type_decl(self, d):
        return []

    def axiom(self, d):
        return []

    def op_decl(self, d):
        t = d.type
        v = SortRef(self.carrier)
        if isinstance(t, PredicateType):
            return []
        if isinstance(t, FunctionType):
            xs = _var_names(len(t.args))
            body = DefinedIn(Apply(FieldRef("A", d.name),
                                   tuple(Var(x) for x in xs)), v)
            return [AxiomDecl(f"pres_{d.name}",
                              Forall(tuple((x, v) for x in xs), body))]
        return [AxiomDecl(f"pres_{d.name}", DefinedIn(_in("A", d.name), v))]


def gen_substructure(p: TheoryPresentation, name: str | None = None):
    q = traverse_theory(p, SubstructureVisitor())
    return q.with_name(name or f"Sub{p.name}")


# ---------------------------------------------------------------------------
# entry points used by the elaborator and the command line


def generate(kind: str, p: TheoryPresentation, name: str):
    """Evaluate a top-level generator call into a theory named ``name``."""
    if kind == "TypeFrom":
        return TheoryPresentation(name, (_model_typedef(p),))
    if kind == "TermAlgebra":
        return TheoryPresentation(name, (TypeDefDecl(
            f"{p.name}Term", gen_term_algebra(p), p.name),))
    if kind == "Homomorphism":
        return gen_homomorphism(p, name)
    if kind == "Substructure":
        return gen_substructure(p, name)
    raise ValueError(f"unknown generator {kind!r}")


def resolve_generated(q: TheoryPresentation, theories: Mapping):
    """Expand ``TypeFrom(P)`` and ``&P`` occurring in ``q`` using
    ``theories``; the origin is kept so printing can abbreviate again."""

    def expand(t):
        if isinstance(t, TypeFrom):
            return gen_record_type(theories[t.theory])
        if isinstance(t, TermsOf):
            return gen_term_algebra(theories[t.theory])
        return t

    decls = []
    for d in q.decls:
        if isinstance(d, TypeDefDecl) and isinstance(d.definition,
                                                     (TypeFrom, TermsOf)):
            d = dataclasses.replace(d, definition=expand(d.definition),
                                    origin=d.definition.theory)
        decls.append(rewrite(d, expand))
    return TheoryPresentation(q.name, tuple(decls))


def lift_renaming(q: TheoryPresentation, r: Renaming) -> TheoryPresentation:
    """Carry a renaming of a source theory over to a theory generated
    from it: record labels, projections ``A.op`` and the derived names
    ``pres_op`` and ``f_sort`` follow ``r``."""
    m = r.mapping

    def derived(name):
        for prefix in ("pres_", "f_"):
            if name.startswith(prefix) and name[len(prefix):] in m:
                return prefix + m[name[len(prefix):]]
        return name

    def step(node):
        if isinstance(node, FieldRef):
            return FieldRef(node.record, m.get(node.field, node.field))
        if isinstance(node, RecordType):
            return RecordType(tuple(
                (m.get(n, n), rename_node(t, m)) for n, t in node.fields))
        return node

    mapping = {n: derived(n) for d in q.decls for n in [d.name]
               if derived(n) != n}
    decls = []
    for d in q.decls:
        d = rewrite(d, step)
        decls.append(rename_node(d, mapping) if mapping else d)
    return TheoryPresentation(q.name, tuple(decls))
