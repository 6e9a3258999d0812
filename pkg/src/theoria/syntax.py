"""Abstract syntax for theory presentations.

Every node is a frozen dataclass built from strings and tuples, so nodes
hash, compare structurally, and can be shared freely.  Source positions
are carried on declarations and definitions but never take part in
equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

Name = str


@dataclass(frozen=True)
class Pos:
    file: str
    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.col}"


# ---------------------------------------------------------------------------
# Type expressions


@dataclass(frozen=True)
class SortRef:
    name: Name


@dataclass(frozen=True)
class FunctionType:
    args: tuple
    result: "TypeExpr"

    def __post_init__(self):
        if not self.args:
            raise ValueError("function type needs at least one argument")


@dataclass(frozen=True)
class PredicateType:
    args: tuple

    def __post_init__(self):
        if not self.args:
            raise ValueError("predicate type needs at least one argument")


@dataclass(frozen=True)
class TypeKind:
    """The kind ``type``."""


@dataclass(frozen=True)
class RecordType:
    fields: tuple  # ((name, TypeExpr), ...)

    def __post_init__(self):
        names = [n for n, _ in self.fields]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate record fields in {names}")

    def field_type(self, name: Name) -> Optional["TypeExpr"]:
        for n, t in self.fields:
            if n == name:
                return t
        return None


@dataclass(frozen=True)
class DataType:
    binder: Name
    constructors: tuple  # ((name, TypeExpr), ...)


@dataclass(frozen=True)
class ProofOf:
    body: "Formula"


@dataclass(frozen=True)
class FieldRef:
    """Projection ``record.field``; used as a sort, an operation head or a term."""

    record: Name
    field: Name

    def __str__(self) -> str:
        return f"{self.record}.{self.field}"


@dataclass(frozen=True)
class TypeCall:
    """Uninterpreted type-level application such as ``domain(prime)``."""

    head: Name
    args: tuple  # of Name


@dataclass(frozen=True)
class TypeFrom:
    """Unexpanded ``TypeFrom(Theory)``; only appears in generated listings."""

    theory: Name


@dataclass(frozen=True)
class TermsOf:
    """Unexpanded ``&Theory``; only appears in generated listings."""

    theory: Name


TypeExpr = Union[
    SortRef, FunctionType, PredicateType, TypeKind, RecordType, DataType,
    ProofOf, FieldRef, TypeCall, TypeFrom, TermsOf,
]


# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True)
class Var:
    name: Name


@dataclass(frozen=True)
class Apply:
    op: Union[Name, FieldRef]
    args: tuple


@dataclass(frozen=True)
class Branch:
    constructor: Name
    vars: tuple  # of Name
    body: "Term"


@dataclass(frozen=True)
class Case:
    scrutinee: "Term"
    branches: tuple  # of Branch


Term = Union[Var, Apply, Case]


# ---------------------------------------------------------------------------
# Formulas


@dataclass(frozen=True)
class Equal:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Forall:
    vars: tuple  # ((name, TypeExpr), ...)
    body: "Formula"

    def __post_init__(self):
        names = [n for n, _ in self.vars]
        if not names:
            raise ValueError("forall binds no variables")
        if len(set(names)) != len(names):
            raise ValueError(f"repeated bound variable in {names}")


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Or:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Implies:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class DefinedIn:
    term: Term
    type: TypeExpr


@dataclass(frozen=True)
class Subtype:
    sub: TypeExpr
    sup: TypeExpr


@dataclass(frozen=True)
class PropertyMacro:
    name: Name
    args: tuple  # of Name or FieldRef


@dataclass(frozen=True)
class PredApp:
    """A relation symbol applied to terms, e.g. ``R(x, y)`` or ``A.R(x)``."""

    pred: Union[Name, FieldRef]
    args: tuple


Formula = Union[Equal, Forall, Not, And, Or, Implies, DefinedIn, Subtype,
                PropertyMacro, PredApp]


# ---------------------------------------------------------------------------
# Declarations


@dataclass(frozen=True)
class TypeDecl:
    name: Name
    pos: Optional[Pos] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class OpDecl:
    name: Name
    type: TypeExpr
    pos: Optional[Pos] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class AxiomDecl:
    name: Name
    body: Formula
    pos: Optional[Pos] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class InductiveDecl:
    name: Name
    constructors: tuple  # ((name, TypeExpr), ...)
    pos: Optional[Pos] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Clause:
    """One defining equation ``f(x1, ..., xn) = rhs``; the xi are binders."""

    params: tuple  # of Name
    rhs: Term


@dataclass(frozen=True)
class DefDecl:
    name: Name
    type: TypeExpr
    clauses: tuple  # of Clause
    pos: Optional[Pos] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class TypeDefDecl:
    """``type N = <type expression>``, produced by the generators.

    ``origin`` remembers the theory a ``TypeFrom``/``&`` abbreviation came
    from so the printer can show the short form.
    """

    name: Name
    definition: TypeExpr
    origin: Optional[Name] = field(default=None, compare=False)
    pos: Optional[Pos] = field(default=None, compare=False, repr=False)


Declaration = Union[TypeDecl, OpDecl, AxiomDecl, InductiveDecl, DefDecl,
                    TypeDefDecl]
SIGNATURE_KINDS = (TypeDecl, OpDecl, InductiveDecl, DefDecl, TypeDefDecl)


def declared_names(decl: Declaration) -> tuple:
    """Every name a declaration introduces (constructors included)."""
    if isinstance(decl, InductiveDecl):
        return (decl.name,) + tuple(c for c, _ in decl.constructors)
    return (decl.name,)


@dataclass(frozen=True)
class TheoryPresentation:
    name: Name
    decls: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "decls", tuple(self.decls))

    def lookup(self, name: Name) -> Optional[Declaration]:
        for d in self.decls:
            if d.name == name:
                return d
        return None

    def with_name(self, name: Name) -> "TheoryPresentation":
        return TheoryPresentation(name, self.decls)

    @property
    def axioms(self) -> list:
        return [d for d in self.decls if isinstance(d, AxiomDecl)]


# ---------------------------------------------------------------------------
# Theory expressions (the combinator language)


@dataclass(frozen=True)
class Literal:
    decls: tuple


@dataclass(frozen=True)
class ExtendedBy:
    base: Name
    decls: tuple


@dataclass(frozen=True)
class Rename:
    base: Name
    renaming: "Renaming"  # noqa: F821 (theoria.core.Renaming)


@dataclass(frozen=True)
class Combine:
    parts: tuple
    over: Name

    def __post_init__(self):
        if len(self.parts) < 2:
            raise ValueError("combine needs at least two parts")


@dataclass(frozen=True)
class Instance:
    source: Name
    base: Name
    via: "Renaming"  # noqa: F821


GENERATOR_KINDS = ("TypeFrom", "TermAlgebra", "Homomorphism", "Substructure")


@dataclass(frozen=True)
class GeneratorCall:
    kind: str
    arg: Name

    def __post_init__(self):
        if self.kind not in GENERATOR_KINDS:
            raise ValueError(f"unknown generator {self.kind!r}")


TheoryExpr = Union[Literal, ExtendedBy, Rename, Combine, Instance,
                   GeneratorCall]


def referenced_theories(expr: TheoryExpr) -> tuple:
    if isinstance(expr, Literal):
        return ()
    if isinstance(expr, (ExtendedBy, Rename)):
        return (expr.base,)
    if isinstance(expr, Combine):
        return tuple(expr.parts) + (expr.over,)
    if isinstance(expr, Instance):
        return (expr.source, expr.base)
    return (expr.arg,)


@dataclass(frozen=True)
class Definition:
    name: Name
    expr: TheoryExpr
    pos: Optional[Pos] = field(default=None, compare=False)


@dataclass(frozen=True)
class SourceFile:
    definitions: tuple  # of Definition
    path: str = "<string>"

    def names(self) -> list:
        return [d.name for d in self.definitions]

    def __getitem__(self, name: Name) -> Definition:
        for d in self.definitions:
            if d.name == name:
                return d
        raise KeyError(name)
