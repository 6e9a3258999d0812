"""Rendering of presentations and theory expressions as source text.

Output is always re-parseable: nested infix applications are fully
parenthesised and every axiom is printed with its name.
"""

from __future__ import annotations

from theoria.lexer import is_operator
from theoria.syntax import (
    And, Apply, AxiomDecl, Case, Combine, DataType, DefDecl, DefinedIn,
    Definition, Equal, ExtendedBy, FieldRef, Forall, FunctionType,
    GeneratorCall, Implies, InductiveDecl, Instance, Literal, Not, OpDecl, Or,
    PredApp, PredicateType, ProofOf, PropertyMacro, RecordType, Rename,
    SortRef, SourceFile, Subtype, TermsOf, TheoryPresentation, TypeCall,
    TypeDecl, TypeDefDecl, TypeFrom, TypeKind, Var,
)

INDENT = "  "


def _head(op) -> str:
    return str(op) if isinstance(op, FieldRef) else op


def _is_infix_head(op) -> bool:
    name = op.field if isinstance(op, FieldRef) else op
    return is_operator(name)


# ---------------------------------------------------------------------------
# types


def show_type(t, full: bool = True) -> str:
    if t is None:
        return "<none>"
    if isinstance(t, SortRef):
        return t.name
    if isinstance(t, FieldRef):
        return str(t)
    if isinstance(t, TypeKind):
        return "type"
    if isinstance(t, FunctionType):
        return f"{_type_args(t.args, full)} -> {show_type(t.result, full)}"
    if isinstance(t, PredicateType):
        if len(t.args) == 1 and not isinstance(t.args[0], (FunctionType,
                                                            PredicateType)):
            return f"{show_type(t.args[0], full)}?"
        return "(" + ", ".join(show_type(a, full) for a in t.args) + ")?"
    if isinstance(t, RecordType):
        return "{" + ", ".join(f"{n} : {show_type(ft, full)}"
                               for n, ft in t.fields) + "}"
    if isinstance(t, DataType):
        ctors = " | ".join(f"{c} : {show_type(ct, full)}"
                           for c, ct in t.constructors)
        return f"data {t.binder} . {ctors}".rstrip()
    if isinstance(t, ProofOf):
        return f"ProofOf({show_formula(t.body)})"
    if isinstance(t, TypeCall):
        return f"{t.head}({', '.join(t.args)})"
    if isinstance(t, TypeFrom):
        return f"TypeFrom({t.theory})"
    if isinstance(t, TermsOf):
        return f"&{t.theory}"
    raise TypeError(f"not a type: {t!r}")


def _type_args(args, full) -> str:
    if len(args) == 1 and not isinstance(args[0], (FunctionType,
                                                   PredicateType)):
        return show_type(args[0], full)
    return "(" + ", ".join(show_type(a, full) for a in args) + ")"


# ---------------------------------------------------------------------------
# terms


def show_term(t) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Apply):
        head = _head(t.op)
        if not t.args:
            return head if isinstance(t.op, FieldRef) else f"{head}()"
        if _is_infix_head(t.op):
            if len(t.args) == 2:
                lhs, rhs = (_operand(a) for a in t.args)
                return f"{lhs} {head} {rhs}"
            if len(t.args) == 1 and not isinstance(t.op, FieldRef):
                return f"{head}{_operand(t.args[0])}"
        return f"{head}({', '.join(show_term(a) for a in t.args)})"
    if isinstance(t, Case):
        parts = []
        for b in t.branches:
            pat = b.constructor
            if b.vars:
                pat += "(" + ", ".join(b.vars) + ")"
            parts.append(f"| {pat} -> {show_term(b.body)}")
        return f"case {show_term(t.scrutinee)} of {{ {' '.join(parts)} }}"
    raise TypeError(f"not a term: {t!r}")


def _operand(t) -> str:
    s = show_term(t)
    if isinstance(t, Case) or (isinstance(t, Apply) and t.args
                               and _is_infix_head(t.op)):
        return f"({s})"
    return s


# ---------------------------------------------------------------------------
# formulas

_LEVEL = {Implies: 1, Or: 2, And: 3}


def show_formula(f) -> str:
    if isinstance(f, Equal):
        return f"{show_term(f.lhs)} = {show_term(f.rhs)}"
    if isinstance(f, Forall):
        return f"forall {_binders(f.vars)}. {show_formula(f.body)}"
    if isinstance(f, Not):
        return f"not({show_formula(f.body)})"
    if isinstance(f, (And, Or, Implies)):
        kw = {And: "and", Or: "or", Implies: "implies"}[type(f)]
        level = _LEVEL[type(f)]
        right_assoc = isinstance(f, Implies)
        lhs = _sub(f.lhs, level, strict=right_assoc)
        rhs = _sub(f.rhs, level, strict=not right_assoc)
        return f"{lhs} {kw} {rhs}"
    if isinstance(f, DefinedIn):
        return f"defined-in({show_term(f.term)}, {show_type(f.type)})"
    if isinstance(f, Subtype):
        return f"{show_type(f.sub)} <: {show_type(f.sup)}"
    if isinstance(f, PropertyMacro):
        args = ", ".join(f"({a})" if isinstance(a, str) and is_operator(a)
                         else str(a) for a in f.args)
        return f"{f.name}({args})"
    if isinstance(f, PredApp):
        head = _head(f.pred)
        if _is_infix_head(f.pred) and len(f.args) == 2:
            return f"{_operand(f.args[0])} {head} {_operand(f.args[1])}"
        return f"{head}({', '.join(show_term(a) for a in f.args)})"
    raise TypeError(f"not a formula: {f!r}")


def _sub(f, level, strict) -> str:
    s = show_formula(f)
    if isinstance(f, Forall):
        return f"({s})"
    inner = _LEVEL.get(type(f))
    if inner is not None and (inner < level or (strict and inner == level)):
        return f"({s})"
    return s


def _binders(vars_) -> str:
    groups: list = []
    for n, t in vars_:
        if groups and groups[-1][1] == t:
            groups[-1][0].append(n)
        else:
            groups.append(([n], t))
    return ", ".join(f"{', '.join(ns)} : {show_type(t)}" for ns, t in groups)


# ---------------------------------------------------------------------------
# declarations


def show_decl(d, full: bool = False) -> list:
    """Lines rendering one declaration (a definition takes two)."""
    if isinstance(d, TypeDecl):
        return [f"{d.name} : type"]
    if isinstance(d, OpDecl):
        return [f"{d.name} : {show_type(d.type)}"]
    if isinstance(d, AxiomDecl):
        return [f"axiom {d.name} := {show_formula(d.body)}"]
    if isinstance(d, InductiveDecl):
        return [f"Inductive {d.name}"] + [
            f"{INDENT}| {c} : {show_type(t)}" for c, t in d.constructors]
    if isinstance(d, DefDecl):
        lines = [f"{d.name} : {show_type(d.type)}"]
        for c in d.clauses:
            lines.append(f"{d.name}({', '.join(c.params)}) = "
                         f"{show_term(c.rhs)}")
        return lines
    if isinstance(d, TypeDefDecl):
        return [f"type {d.name} = {_show_typedef(d, full)}"]
    raise TypeError(f"not a declaration: {d!r}")


def _show_typedef(d: TypeDefDecl, full: bool) -> str:
    if not full and d.origin is not None:
        if isinstance(d.definition, RecordType):
            return f"TypeFrom({d.origin})"
        if isinstance(d.definition, DataType):
            return f"&{d.origin}"
    return show_type(d.definition)


def _block(decls, full: bool, indent: str = INDENT) -> str:
    if not decls:
        return "{}"
    rendered = [show_decl(d, full) for d in decls]
    lines = []
    for k, group in enumerate(rendered):
        sep = ";" if k < len(rendered) - 1 else ""
        # the separator goes after the last line of a multi-line decl
        lines.extend(indent + ln for ln in group[:-1])
        lines.append(indent + group[-1] + sep)
    return "{\n" + "\n".join(lines) + "\n}"


def pretty_print(p: TheoryPresentation, full: bool = False) -> str:
    """``Name := Theory { ... }`` with one declaration per line.

    ``full`` shows generated ``TypeFrom``/``&`` types expanded.
    """
    return f"{p.name} := Theory {_block(p.decls, full)}"


def pretty_print_compact(p: TheoryPresentation, full: bool = False) -> str:
    """Single-line rendering, e.g. ``Theory { U : type; * : (U, U) -> U }``."""
    if not p.decls:
        return "Theory {}"
    body = "; ".join("; ".join(show_decl(d, full)) for d in p.decls)
    return f"Theory {{ {body} }}"


# ---------------------------------------------------------------------------
# theory expressions


def show_texpr(expr) -> str:
    if isinstance(expr, Literal):
        return f"Theory {_block(expr.decls, full=False)}"
    if isinstance(expr, ExtendedBy):
        return f"{expr.base} extended by {_block(expr.decls, full=False)}"
    if isinstance(expr, Rename):
        return f"{expr.base} {expr.renaming}"
    if isinstance(expr, Combine):
        return f"combine {', '.join(expr.parts)} over {expr.over}"
    if isinstance(expr, Instance):
        return f"instance {expr.source} of {expr.base} via {expr.via}"
    if isinstance(expr, GeneratorCall):
        if expr.kind == "TermAlgebra":
            return f"&{expr.arg}"
        return f"{expr.kind}({expr.arg})"
    raise TypeError(f"not a theory expression: {expr!r}")


def show_definition(d: Definition) -> str:
    return f"{d.name} := {show_texpr(d.expr)}"


def print_source(src: SourceFile) -> str:
    return "\n".join(show_definition(d) for d in src.definitions) + "\n"
