"""Sort checking of elaborated presentations.

Sorts are nominal: two sorts agree when their type expressions are equal.
The only subtyping is one step through an axiom ``V <: S`` in scope.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from theoria.core import rewrite
from theoria.errors import SortMismatch, TheoriaError, UnknownName
from theoria.printer import show_type
from theoria.syntax import (
    And, Apply, AxiomDecl, Case, DataType, DefDecl, DefinedIn, Equal,
    FieldRef, Forall, FunctionType, Implies, InductiveDecl, Not, OpDecl, Or,
    Pos, PredApp, PredicateType, ProofOf, PropertyMacro, RecordType, SortRef,
    Subtype, TermsOf, TheoryPresentation, TypeCall, TypeDecl, TypeDefDecl,
    TypeFrom, TypeKind, Var,
)

SEVERITIES = ("error", "warning", "note")


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    code: str
    message: str
    decl: Optional[str] = None
    pos: Optional[Pos] = None

    def render(self, fallback_file: str = "<input>") -> str:
        pos = self.pos or Pos(fallback_file, 0, 0)
        where = f" [{self.decl}]" if self.decl else ""
        return f"{pos}: {self.severity}: {self.message}{where}"

    def __str__(self) -> str:
        return self.render()


class _Skip(Exception):
    """Raised to abandon checking a declaration (after a note)."""


class _Problem(TheoriaError):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


_SORT = TypeKind()


def _flatten(t):
    """Uncurry ``A -> B -> C`` into ``([A, B], C)``."""
    args = []
    while isinstance(t, FunctionType):
        args.extend(t.args)
        t = t.result
    return args, t


def _qualify(t, record: str, labels: set):
    """Rewrite references to record labels into projections of ``record``."""

    def step(node):
        if isinstance(node, SortRef) and node.name in labels:
            return FieldRef(record, node.name)
        return node

    return rewrite(t, step)


@dataclass
class SortContext:
    """Declared symbols with their types, plus a stack of bound variables.

    A declared sort maps to the kind ``type``; a defined type maps to its
    definition wrapped in :class:`TypeDefDecl`.
    """

    declared: dict = field(default_factory=dict)
    bound: list = field(default_factory=list)
    inductives: dict = field(default_factory=dict)
    subtypes: set = field(default_factory=set)
    diagnostics: list = field(default_factory=list)
    current: Optional[str] = None
    pos: Optional[Pos] = None

    @classmethod
    def of(cls, p: TheoryPresentation) -> "SortContext":
        ctx = cls()
        for d in p.decls:
            ctx.declare(d)
        return ctx

    # -- building -----------------------------------------------------------

    def declare(self, d) -> None:
        if isinstance(d, TypeDecl):
            self.declared[d.name] = _SORT
        elif isinstance(d, (OpDecl, DefDecl)):
            self.declared[d.name] = d.type
        elif isinstance(d, InductiveDecl):
            self.declared[d.name] = _SORT
            self.inductives[d.name] = d
            for c, t in d.constructors:
                self.declared[c] = t
        elif isinstance(d, TypeDefDecl):
            self.declared[d.name] = d
        elif isinstance(d, AxiomDecl) and isinstance(d.body, Subtype):
            self.subtypes.add((d.body.sub, d.body.sup))

    def push(self, name: str, t) -> None:
        if name in self.declared and self.current is not None:
            self.report("warning", "Shadowing",
                        f"bound variable {name!r} shadows a declaration")
        self.bound.append((name, t))

    def pop(self, n: int = 1) -> None:
        del self.bound[len(self.bound) - n:]

    def report(self, severity: str, code: str, message: str) -> None:
        self.diagnostics.append(
            Diagnostic(severity, code, message, self.current, self.pos))

    # -- lookup -------------------------------------------------------------

    def lookup(self, name: str):
        for n, t in reversed(self.bound):
            if n == name:
                return t
        if name in self.declared:
            return self.declared[name]
        raise UnknownName(f"unknown name {name!r}")

    def is_sort(self, name: str) -> bool:
        try:
            t = self.lookup(name)
        except UnknownName:
            return False
        return isinstance(t, (TypeKind, TypeDefDecl))

    def record_of(self, record: str) -> RecordType:
        t = self.lookup(record)
        if isinstance(t, SortRef) and t.name in self.declared:
            target = self.declared[t.name]
            if isinstance(target, TypeDefDecl):
                t = target.definition
        if not isinstance(t, RecordType):
            raise _Problem("UnknownField", f"{record!r} is not a record")
        return t

    def field_type(self, ref: FieldRef):
        rec = self.record_of(ref.record)
        labels = set()
        for n, ft in rec.fields:
            if n == ref.field:
                return _qualify(ft, ref.record, labels)
            labels.add(n)
        raise _Problem("UnknownField",
                       f"{ref.record} has no field {ref.field!r}")

    def symbol_type(self, head):
        if isinstance(head, FieldRef):
            return self.field_type(head)
        return self.lookup(head)

    def conforms(self, found, expected) -> bool:
        return found == expected or (found, expected) in self.subtypes


# ---------------------------------------------------------------------------
# types


def check_type(t, ctx: SortContext, *, kind_ok: bool = False) -> None:
    """Raise a problem unless every sort ``t`` mentions is known."""
    if isinstance(t, SortRef):
        if not ctx.is_sort(t.name):
            raise _Problem("UnknownSort", f"unknown sort {t.name!r}")
    elif isinstance(t, FieldRef):
        if not isinstance(ctx.field_type(t), TypeKind):
            raise _Problem("UnknownSort", f"{t} is not a type field")
    elif isinstance(t, TypeKind):
        if not kind_ok:
            raise _Problem("SortMismatch", "'type' used as a sort")
    elif isinstance(t, (FunctionType, PredicateType)):
        for a in t.args:
            check_type(a, ctx)
        if isinstance(t, FunctionType):
            check_type(t.result, ctx)
    elif isinstance(t, RecordType):
        outer = dict(ctx.declared)
        try:
            for n, ft in t.fields:
                if isinstance(ft, ProofOf):
                    check_formula(ft.body, ctx)
                else:
                    check_type(ft, ctx, kind_ok=True)
                ctx.declared[n] = ft
        finally:
            ctx.declared = outer
    elif isinstance(t, DataType):
        ctx.push(t.binder, _SORT)
        try:
            for _, ct in t.constructors:
                check_type(ct, ctx)
                if _flatten(ct)[1] != SortRef(t.binder):
                    raise _Problem("SortMismatch", "data constructor must "
                                   f"produce {t.binder}")
        finally:
            ctx.pop()
    elif isinstance(t, ProofOf):
        check_formula(t.body, ctx)
    elif isinstance(t, TypeCall):
        ctx.report("note", "UncheckedDomain",
                   f"{t.head}({', '.join(t.args)}) is not interpreted; "
                   "formula not sort-checked")
        raise _Skip()
    elif isinstance(t, (TypeFrom, TermsOf)):
        pass
    else:
        raise _Problem("SortMismatch", f"not a type: {t!r}")


# ---------------------------------------------------------------------------
# terms


def infer_term_sort(t, ctx: SortContext):
    """The sort of ``t``; raises :class:`SortMismatch` or :class:`UnknownName`."""
    if isinstance(t, Var):
        st = ctx.lookup(t.name)
        if isinstance(st, (TypeKind, TypeDefDecl)):
            raise SortMismatch(None, st, ctx.pos,
                               f"{t.name!r} is a type, not a value")
        if isinstance(st, (FunctionType, PredicateType)):
            raise SortMismatch(None, st, ctx.pos,
                               f"{t.name!r} is an operation and needs "
                               "arguments")
        return st
    if isinstance(t, Apply):
        st = ctx.symbol_type(t.op)
        name = str(t.op)
        if not t.args:
            if isinstance(st, (FunctionType, PredicateType, TypeKind)):
                raise SortMismatch(None, st, ctx.pos,
                                   f"{name} is not a constant")
            return st
        if not isinstance(st, FunctionType):
            raise SortMismatch(None, st, ctx.pos,
                               f"{name} is not a function")
        params, result = _flatten(st)
        if len(params) != len(t.args):
            raise SortMismatch(
                st, None, ctx.pos, f"{name} expects {len(params)} "
                f"argument(s), given {len(t.args)}")
        _check_args(name, params, t.args, ctx)
        return result
    if isinstance(t, Case):
        return _case_sort(t, ctx)
    raise TypeError(f"not a term: {t!r}")


def _check_args(name, params, args, ctx) -> None:
    for k, (expected, a) in enumerate(zip(params, args), 1):
        found = infer_term_sort(a, ctx)
        if not ctx.conforms(found, expected):
            raise SortMismatch(
                expected, found, ctx.pos,
                f"argument {k} of {name}: expected {show_type(expected)}, "
                f"found {show_type(found)}")


def _case_sort(t: Case, ctx: SortContext):
    scrutinee = infer_term_sort(t.scrutinee, ctx)
    ind = (ctx.inductives.get(scrutinee.name)
           if isinstance(scrutinee, SortRef) else None)
    if ind is None:
        raise SortMismatch(None, scrutinee, ctx.pos,
                           f"case on {show_type(scrutinee)}, which is not "
                           "an inductive type")
    ctx.diagnostics.extend(
        Diagnostic(d.severity, d.code, d.message, ctx.current, ctx.pos)
        for d in check_case_exhaustive(t, ind))
    constructors = dict(ind.constructors)
    result = None
    for b in t.branches:
        if b.constructor not in constructors:
            raise UnknownName(f"{b.constructor!r} is not a constructor of "
                              f"{ind.name}")
        params, _ = _flatten(constructors[b.constructor])
        if len(params) != len(b.vars):
            raise SortMismatch(
                None, None, ctx.pos, f"pattern {b.constructor} binds "
                f"{len(b.vars)} variable(s), constructor takes {len(params)}")
        for v, s in zip(b.vars, params):
            ctx.push(v, s)
        try:
            s = infer_term_sort(b.body, ctx)
        finally:
            ctx.pop(len(b.vars))
        if result is None:
            result = s
        elif s != result:
            raise SortMismatch(result, s, ctx.pos)
    if result is None:
        raise SortMismatch(None, None, ctx.pos, "case with no branches")
    return result


def check_case_exhaustive(c: Case, ind: InductiveDecl) -> list:
    """Missing, duplicate and unknown branches of ``c`` over ``ind``."""
    out = []
    seen = set()
    names = [n for n, _ in ind.constructors]
    for b in c.branches:
        if b.constructor in seen:
            out.append(Diagnostic(
                "error", "DuplicateBranch",
                f"duplicate branch {b.constructor} in case over {ind.name}"))
        seen.add(b.constructor)
    for n in names:
        if n not in seen:
            out.append(Diagnostic(
                "error", "MissingConstructor",
                f"case over {ind.name} misses constructor {n}"))
    return out


# ---------------------------------------------------------------------------
# formulas


def check_formula(f, ctx: SortContext) -> None:
    if isinstance(f, Equal):
        lhs = infer_term_sort(f.lhs, ctx)
        rhs = infer_term_sort(f.rhs, ctx)
        if not (ctx.conforms(lhs, rhs) or ctx.conforms(rhs, lhs)):
            raise SortMismatch(lhs, rhs, ctx.pos,
                               f"equation between {show_type(lhs)} and "
                               f"{show_type(rhs)}")
    elif isinstance(f, Forall):
        for _, t in f.vars:
            check_type(t, ctx)
        for n, t in f.vars:
            ctx.push(n, t)
        try:
            check_formula(f.body, ctx)
        finally:
            ctx.pop(len(f.vars))
    elif isinstance(f, Not):
        check_formula(f.body, ctx)
    elif isinstance(f, (And, Or, Implies)):
        check_formula(f.lhs, ctx)
        check_formula(f.rhs, ctx)
    elif isinstance(f, (DefinedIn, Subtype)):
        check_subtype_and_definedness(f, ctx, _raise=True)
    elif isinstance(f, PredApp):
        st = ctx.symbol_type(f.pred)
        if not isinstance(st, PredicateType):
            raise SortMismatch(None, st, ctx.pos,
                               f"{f.pred} is not a relation")
        if len(st.args) != len(f.args):
            raise SortMismatch(st, None, ctx.pos,
                               f"{f.pred} expects {len(st.args)} "
                               f"argument(s), given {len(f.args)}")
        _check_args(str(f.pred), st.args, f.args, ctx)
    elif isinstance(f, PropertyMacro):
        raise _Problem("UnexpandedMacro",
                       f"property macro {f.name} was not expanded")
    else:
        raise TypeError(f"not a formula: {f!r}")


def check_subtype_and_definedness(f, ctx: SortContext, _raise=False) -> list:
    """Accept ``S <: T`` and ``defined-in(t, T)`` when both sides resolve."""
    before = len(ctx.diagnostics)
    try:
        if isinstance(f, Subtype):
            check_type(f.sub, ctx)
            check_type(f.sup, ctx)
        elif isinstance(f, DefinedIn):
            infer_term_sort(f.term, ctx)
            check_type(f.type, ctx)
        else:
            check_formula(f, ctx)
    except (_Problem, UnknownName, SortMismatch) as exc:
        if _raise:
            raise
        ctx.report("error", _code(exc), exc.message)
    return ctx.diagnostics[before:]


def _code(exc) -> str:
    if isinstance(exc, _Problem):
        return exc.code
    if isinstance(exc, UnknownName):
        return "UnknownName"
    return "SortMismatch"


# ---------------------------------------------------------------------------
# declarations


def _check_decl(d, ctx: SortContext) -> None:
    if isinstance(d, TypeDecl):
        return
    if isinstance(d, OpDecl):
        check_type(d.type, ctx)
    elif isinstance(d, AxiomDecl):
        check_formula(d.body, ctx)
    elif isinstance(d, InductiveDecl):
        for c, t in d.constructors:
            check_type(t, ctx)
            if _flatten(t)[1] != SortRef(d.name):
                raise _Problem("SortMismatch", f"constructor {c} must "
                               f"produce {d.name}")
    elif isinstance(d, DefDecl):
        check_type(d.type, ctx)
        params, result = _flatten(d.type)
        for c in d.clauses:
            if len(c.params) != len(params):
                raise SortMismatch(
                    d.type, None, ctx.pos, f"{d.name} takes {len(params)} "
                    f"argument(s), its equation binds {len(c.params)}")
            for v, s in zip(c.params, params):
                ctx.push(v, s)
            try:
                found = infer_term_sort(c.rhs, ctx)
            finally:
                ctx.pop(len(c.params))
            if not ctx.conforms(found, result):
                raise SortMismatch(result, found, ctx.pos)
    elif isinstance(d, TypeDefDecl):
        check_type(d.definition, ctx)


def check_theory(p: TheoryPresentation) -> list:
    """Diagnostics for ``p``; declarations see only those before them."""
    ctx = SortContext()
    for d in p.decls:
        ctx.current, ctx.pos = d.name, d.pos
        # a definition may recurse, so it is in scope for its own body
        if isinstance(d, (DefDecl, InductiveDecl)):
            ctx.declare(d)
        try:
            _check_decl(d, ctx)
        except _Skip:
            pass
        except (_Problem, UnknownName, SortMismatch) as exc:
            ctx.report("error", _code(exc), exc.message)
        ctx.declare(d)
    return ctx.diagnostics


def errors_only(diagnostics) -> list:
    return [d for d in diagnostics if d.severity == "error"]
