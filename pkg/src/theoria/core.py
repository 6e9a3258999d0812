"""Renamings, intensional equality and arrows between presentations."""

from __future__ import annotations

import dataclasses
import functools
import itertools
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from theoria.errors import BrokenArrow, CaptureError, InvalidRenaming
from theoria.syntax import (
    And, Apply, AxiomDecl, Branch, Case, Clause, DataType, DefDecl,
    DefinedIn, Equal, FieldRef, Forall, FunctionType, Implies, InductiveDecl,
    Name, Not, OpDecl, Or, PredApp, PredicateType, ProofOf, PropertyMacro,
    RecordType, SortRef, Subtype, TermsOf, TheoryPresentation, TypeCall,
    TypeDecl, TypeDefDecl, TypeFrom, TypeKind, Var, declared_names,
)

BUILTIN_NAMES = frozenset(
    {"defined-in", "not", "and", "or", "implies", "forall", "type", "="})

PROVENANCES = ("extension", "rename", "instance", "combine-leg", "composite")


# ---------------------------------------------------------------------------
# Renamings


@dataclass(frozen=True, init=False)
class Renaming:
    """A finite injective map of names, applied simultaneously.

    Identity pairs are accepted but dropped, so ``Renaming({"U": "U"})``
    equals ``Renaming()``.
    """

    pairs: tuple

    def __init__(self, pairs: Mapping | Iterable = ()):
        items = list(pairs.items()) if isinstance(pairs, Mapping) else list(pairs)
        mapping: dict = {}
        for src, dst in items:
            if src in mapping and mapping[src] != dst:
                raise InvalidRenaming(f"{src!r} is mapped to both "
                                      f"{mapping[src]!r} and {dst!r}")
            mapping[src] = dst
        seen: dict = {}
        for src, dst in mapping.items():
            if dst in seen:
                raise InvalidRenaming(
                    f"renaming is not injective: {seen[dst]!r} and {src!r} "
                    f"both map to {dst!r}")
            seen[dst] = src
        bad = (set(mapping) | set(mapping.values())) & BUILTIN_NAMES
        if bad:
            raise InvalidRenaming(f"cannot rename builtin names {sorted(bad)}")
        object.__setattr__(self, "pairs", tuple(sorted(
            (s, d) for s, d in mapping.items() if s != d)))

    @property
    def mapping(self) -> dict:
        return dict(self.pairs)

    def __call__(self, name: Name) -> Name:
        for s, d in self.pairs:
            if s == name:
                return d
        return name

    def __bool__(self) -> bool:
        return bool(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def domain(self) -> frozenset:
        return frozenset(s for s, _ in self.pairs)

    @property
    def range(self) -> frozenset:
        return frozenset(d for _, d in self.pairs)

    def inverse(self) -> "Renaming":
        return Renaming((d, s) for s, d in self.pairs)

    def restrict(self, names: Iterable[Name]) -> "Renaming":
        keep = set(names)
        return Renaming((s, d) for s, d in self.pairs if s in keep)

    def __str__(self) -> str:
        return "[" + ", ".join(f"{s} |-> {d}" for s, d in self.pairs) + "]"


IDENTITY = Renaming()


def compose_renamings(first: Renaming, second: Renaming) -> Renaming:
    """``second`` after ``first``.

    A name the first map sends elsewhere is followed through the second;
    names the first map is silent on pass through to the second, unless
    the first map already produces them (they were vacated).
    """
    fm = first.mapping
    domain = list(fm) + [n for n in second.domain
                         if n not in fm and n not in first.range]
    return Renaming((n, second(first(n))) for n in domain)


# ---------------------------------------------------------------------------
# Binder-aware traversal


class _Mapper:
    """Rebuilds a node, sending free names through ``free`` and binders
    through ``bind``; ``decl`` handles declared names."""

    def __init__(self, free: Callable, bind: Callable, decl: Callable):
        self.free = free
        self.bind = bind
        self.decl = decl

    def name(self, n, env):
        return env[n] if n in env else self.free(n)

    def head(self, h, env):
        if isinstance(h, FieldRef):
            return FieldRef(self.name(h.record, env), h.field)
        return self.name(h, env)

    def binders(self, names, env, scope):
        env = dict(env)
        out = []
        for n in names:
            new = self.bind(n, scope)
            env[n] = new
            out.append(new)
        return tuple(out), env

    # terms
    def term(self, t, env):
        if isinstance(t, Var):
            return Var(self.name(t.name, env))
        if isinstance(t, Apply):
            return Apply(self.head(t.op, env),
                         tuple(self.term(a, env) for a in t.args))
        if isinstance(t, Case):
            branches = []
            for b in t.branches:
                vs, inner = self.binders(b.vars, env, [b.body])
                branches.append(Branch(self.name(b.constructor, env), vs,
                                       self.term(b.body, inner)))
            return Case(self.term(t.scrutinee, env), tuple(branches))
        raise TypeError(f"not a term: {t!r}")

    # types
    def type(self, t, env):
        if isinstance(t, SortRef):
            return SortRef(self.name(t.name, env))
        if isinstance(t, FieldRef):
            return self.head(t, env)
        if isinstance(t, FunctionType):
            return FunctionType(tuple(self.type(a, env) for a in t.args),
                                self.type(t.result, env))
        if isinstance(t, PredicateType):
            return PredicateType(tuple(self.type(a, env) for a in t.args))
        if isinstance(t, (TypeKind, TypeFrom, TermsOf)):
            return t
        if isinstance(t, RecordType):
            env = dict(env)
            fields = []
            for n, ft in t.fields:
                fields.append((n, self.type(ft, env)))
                env[n] = n  # later fields see the label, not an outer name
            return RecordType(tuple(fields))
        if isinstance(t, DataType):
            (b,), inner = self.binders((t.binder,), env,
                                       [ct for _, ct in t.constructors])
            return DataType(b, tuple((c, self.type(ct, inner))
                                     for c, ct in t.constructors))
        if isinstance(t, ProofOf):
            return ProofOf(self.formula(t.body, env))
        if isinstance(t, TypeCall):
            return TypeCall(t.head, tuple(self.name(a, env) for a in t.args))
        raise TypeError(f"not a type: {t!r}")

    # formulas
    def formula(self, f, env):
        if isinstance(f, Equal):
            return Equal(self.term(f.lhs, env), self.term(f.rhs, env))
        if isinstance(f, Forall):
            types = [self.type(t, env) for _, t in f.vars]
            vs, inner = self.binders([n for n, _ in f.vars], env, [f.body])
            return Forall(tuple(zip(vs, types)), self.formula(f.body, inner))
        if isinstance(f, Not):
            return Not(self.formula(f.body, env))
        if isinstance(f, (And, Or, Implies)):
            return type(f)(self.formula(f.lhs, env), self.formula(f.rhs, env))
        if isinstance(f, DefinedIn):
            return DefinedIn(self.term(f.term, env), self.type(f.type, env))
        if isinstance(f, Subtype):
            return Subtype(self.type(f.sub, env), self.type(f.sup, env))
        if isinstance(f, PropertyMacro):
            return PropertyMacro(f.name, tuple(self.head(a, env) for a in f.args))
        if isinstance(f, PredApp):
            return PredApp(self.head(f.pred, env),
                           tuple(self.term(a, env) for a in f.args))
        raise TypeError(f"not a formula: {f!r}")

    # declarations
    def declaration(self, d):
        env: dict = {}
        r = dataclasses.replace
        if isinstance(d, TypeDecl):
            return r(d, name=self.decl(d.name))
        if isinstance(d, OpDecl):
            return r(d, name=self.decl(d.name), type=self.type(d.type, env))
        if isinstance(d, AxiomDecl):
            return r(d, name=self.decl(d.name), body=self.formula(d.body, env))
        if isinstance(d, InductiveDecl):
            return r(d, name=self.decl(d.name), constructors=tuple(
                (self.decl(c), self.type(t, env)) for c, t in d.constructors))
        if isinstance(d, DefDecl):
            clauses = []
            for c in d.clauses:
                ps, inner = self.binders(c.params, env, [c.rhs])
                clauses.append(Clause(ps, self.term(c.rhs, inner)))
            return r(d, name=self.decl(d.name), type=self.type(d.type, env),
                     clauses=tuple(clauses))
        if isinstance(d, TypeDefDecl):
            return r(d, name=self.decl(d.name),
                     definition=self.type(d.definition, env))
        raise TypeError(f"not a declaration: {d!r}")

    def any(self, node, env=None):
        env = env or {}
        if isinstance(node, (TypeDecl, OpDecl, AxiomDecl, InductiveDecl,
                             DefDecl, TypeDefDecl)):
            return self.declaration(node)
        if isinstance(node, (Var, Apply, Case)):
            return self.term(node, env)
        if isinstance(node, (Equal, Forall, Not, And, Or, Implies, DefinedIn,
                             Subtype, PropertyMacro, PredApp)):
            return self.formula(node, env)
        return self.type(node, env)


def _keep(n):
    return n


def free_names(node) -> set:
    """Names occurring free in a node (declared names of a declaration are
    not counted; constructor names in patterns are)."""
    found: set = set()

    def free(n):
        found.add(n)
        return n

    _Mapper(free, lambda n, scope: n, _keep).any(node)
    return found


@functools.lru_cache(maxsize=65536)
def canonical(node):
    """Alpha-normal form: every binder renamed to a positional name."""
    counter = itertools.count()
    return _Mapper(_keep, lambda n, scope: f"%{next(counter)}", _keep).any(node)


def alpha_equal(a, b) -> bool:
    """Syntactic equality up to consistent renaming of bound variables."""
    return type(a) is type(b) and canonical(a) == canonical(b)


def _fresh(base: Name, avoid: set) -> Name:
    for k in itertools.count(1):
        cand = f"{base}{k}"
        if cand not in avoid:
            return cand
    raise AssertionError("unreachable")


def rename_node(node, mapping: Mapping, *, decls: bool = True):
    """Apply a name substitution to free names (and declared names when
    ``decls``), freshening any binder that would capture a new name."""
    targets = set(mapping.values())

    def bind(n, scope):
        if n not in targets:
            return n
        return _fresh(n, targets.union(*(free_names(s) for s in scope)))

    def free(n):
        return mapping.get(n, n)

    return _Mapper(free, bind, free if decls else _keep).any(node)


def rewrite(node, fn: Callable):
    """Bottom-up rebuild of a syntax tree, applying ``fn`` to every node."""
    if isinstance(node, tuple):
        return tuple(rewrite(x, fn) for x in node)
    if dataclasses.is_dataclass(node) and not isinstance(node, type):
        changes = {}
        for f in dataclasses.fields(node):
            if f.name == "pos" or not f.init:
                continue
            old = getattr(node, f.name)
            new = rewrite(old, fn)
            if new is not old:
                changes[f.name] = new
        if changes and not isinstance(node, Renaming):
            node = dataclasses.replace(node, **changes)
        return fn(node)
    return node


# ---------------------------------------------------------------------------
# Presentations


def symbols_of(p: TheoryPresentation) -> set:
    return {n for d in p.decls for n in declared_names(d)}


def apply_renaming(p: TheoryPresentation, r: Renaming,
                   name: Optional[Name] = None) -> TheoryPresentation:
    """Rename declared names and their free occurrences simultaneously."""
    if not isinstance(r, Renaming):
        r = Renaming(r)
    declared = symbols_of(p)
    for src, dst in r.pairs:
        if dst in declared and dst not in r.domain:
            raise CaptureError(
                f"renaming {src} |-> {dst} captures the declared name {dst!r} "
                f"of {p.name}")
    mapping = r.mapping
    return TheoryPresentation(name or p.name,
                              tuple(rename_node(d, mapping) for d in p.decls))


def decl_set(p: TheoryPresentation) -> frozenset:
    return frozenset(canonical(d) for d in p.decls)


def equivalent(p: TheoryPresentation, q: TheoryPresentation) -> bool:
    """Order-insensitive alpha-equality of the declarations."""
    return len(p.decls) == len(q.decls) and decl_set(p) == decl_set(q)


def satisfies(provided, required) -> bool:
    """Whether declaration ``provided`` meets the demand of ``required``.

    Beyond alpha-equality, a signature symbol may be realised more
    concretely: an abstract type by an inductive or defined type, an
    operation by a definition or by a constructor of an inductive type.
    """
    if alpha_equal(provided, required):
        return True
    if isinstance(required, TypeDecl):
        return (isinstance(provided, (InductiveDecl, TypeDefDecl))
                and provided.name == required.name)
    if isinstance(required, OpDecl):
        if isinstance(provided, DefDecl):
            return (provided.name == required.name
                    and alpha_equal(provided.type, required.type))
        if isinstance(provided, InductiveDecl):
            return any(c == required.name and alpha_equal(t, required.type)
                       for c, t in provided.constructors)
    return False


def find_counterpart(target: TheoryPresentation, required) -> Optional[object]:
    for d in target.decls:
        if satisfies(d, required):
            return d
    return None


# ---------------------------------------------------------------------------
# Arrows


@dataclass(frozen=True)
class Arrow:
    source: Name
    target: Name
    renaming: Renaming = IDENTITY
    provenance: str = "extension"

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    def __str__(self) -> str:
        ren = f" {self.renaming}" if self.renaming else ""
        return f"{self.source} -> {self.target} ({self.provenance}{ren})"


@dataclass(frozen=True)
class ProofObligation:
    arrow: Arrow
    axiom: AxiomDecl

    def __str__(self) -> str:
        return (f"obligation for {self.arrow.source} -> {self.arrow.target}: "
                f"axiom {self.axiom.name}")


def check_inclusion(source: TheoryPresentation, target: TheoryPresentation,
                    r: Renaming, *, instance: bool = False):
    """Check ``r(source)`` is included in ``target``.

    Missing signature symbols raise :class:`BrokenArrow`.  Missing axioms
    are returned as a list when ``instance`` is set, and raise otherwise.
    """
    renamed = apply_renaming(source, r.restrict(symbols_of(source)))
    missing = []
    for d in renamed.decls:
        if find_counterpart(target, d) is not None:
            continue
        if isinstance(d, AxiomDecl) and instance:
            missing.append(d)
            continue
        what = "axiom" if isinstance(d, AxiomDecl) else "symbol"
        raise BrokenArrow(
            f"{source.name} -> {target.name}: {what} {d.name!r} has no "
            f"intensionally equal counterpart in {target.name}")
    return missing


def validate_arrow(a: Arrow, env) -> list:
    """Return the proof obligations of an arrow (empty for inclusions)."""
    theories = env.theories if hasattr(env, "theories") else env
    missing = check_inclusion(theories[a.source], theories[a.target],
                              a.renaming, instance=a.provenance == "instance")
    return [ProofObligation(a, ax) for ax in missing]
