"""Evaluation of theory expressions into flat presentations.

Definitions are evaluated in order.  Each construction records the
arrows it induces, and ``combine`` consults that graph to find the legs
of its pushout.
"""

from __future__ import annotations

import dataclasses
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Optional

from theoria.core import (
    BUILTIN_NAMES, IDENTITY, Arrow, Renaming, alpha_equal, apply_renaming,
    check_inclusion, compose_renamings, free_names, satisfies, symbols_of,
    validate_arrow,
)
from theoria.errors import (
    AmbiguousMorphism, BrokenArrow, CaptureError, DuplicateName, NameClash,
    NoMorphism, TheoriaError, UnknownTheory, UnresolvedSymbol,
)
from theoria.macros import MacroTable, default_table, expand_macros
from theoria.parser import parse_library
from theoria.syntax import (
    AxiomDecl, Combine, DefDecl, Definition, ExtendedBy, GeneratorCall,
    InductiveDecl, Instance, Literal, OpDecl, Rename, SourceFile,
    TheoryPresentation, declared_names,
)


@dataclass
class LibraryEnv:
    theories: dict = field(default_factory=dict)
    arrows: list = field(default_factory=list)
    obligations: list = field(default_factory=list)
    definitions: dict = field(default_factory=dict)
    macros: MacroTable = field(default_factory=default_table)

    def __getitem__(self, name: str) -> TheoryPresentation:
        try:
            return self.theories[name]
        except KeyError:
            raise UnknownTheory(f"unknown theory {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self.theories

    def incoming(self) -> dict:
        index = defaultdict(list)
        for a in self.arrows:
            index[a.target].append(a)
        return index

    def add(self, p: TheoryPresentation, arrows: Iterable[Arrow] = (),
            definition: Optional[Definition] = None) -> None:
        if p.name in self.theories:
            raise DuplicateName(f"theory {p.name!r} is already defined")
        self.theories[p.name] = p
        if definition is not None:
            self.definitions[p.name] = definition
        for a in arrows:
            self.arrows.append(a)
            self.obligations.extend(validate_arrow(a, self))


# ---------------------------------------------------------------------------
# declarations


def operation_signature(decls: Iterable) -> dict:
    """Operation and constant names of ``decls`` mapped to their types."""
    sig = {}
    for d in decls:
        if isinstance(d, (OpDecl, DefDecl)):
            sig[d.name] = d.type
        elif isinstance(d, InductiveDecl):
            for c, t in d.constructors:
                sig[c] = t
    return sig


def _add_decls(base_decls: tuple, new_decls: Iterable, macros: Mapping,
               theory: str) -> tuple:
    decls = list(base_decls)
    known = {n for d in decls for n in declared_names(d)}
    sig = operation_signature(decls)
    for d in new_decls:
        names = declared_names(d)
        clash = [n for n in names if n in known] or (
            [n for n in names if names.count(n) > 1])
        if clash:
            raise DuplicateName(
                f"{clash[0]!r} is already declared in {theory}", d.pos)
        if isinstance(d, AxiomDecl):
            d = dataclasses.replace(d, body=expand_macros(d.body, macros, sig))
        unknown = free_names(d) - known - BUILTIN_NAMES - set(names)
        if unknown:
            raise UnresolvedSymbol(
                f"{d.name!r} refers to undeclared "
                f"{', '.join(sorted(unknown))}", d.pos)
        decls.append(d)
        known.update(names)
        sig.update(operation_signature([d]))
    return tuple(decls)


def eval_literal(name: str, decls: Iterable, macros: Mapping | None = None):
    macros = default_table() if macros is None else macros
    return TheoryPresentation(name, _add_decls((), decls, macros, name))


def eval_extend(base: TheoryPresentation, new_decls: Iterable,
                name: Optional[str] = None, macros: Mapping | None = None):
    """Append ``new_decls`` to ``base``; returns the result and its
    inclusion arrow."""
    macros = default_table() if macros is None else macros
    name = name or base.name
    result = TheoryPresentation(name, _add_decls(base.decls, new_decls,
                                                 macros, name))
    return result, Arrow(base.name, name, IDENTITY, "extension")


def _check_domain(p: TheoryPresentation, r: Renaming) -> None:
    missing = r.domain - symbols_of(p)
    if missing:
        raise UnresolvedSymbol(f"renaming mentions {', '.join(sorted(missing))}"
                               f" which {p.name} does not declare")


def eval_rename(base: TheoryPresentation, r: Renaming,
                name: Optional[str] = None):
    _check_domain(base, r)
    name = name or base.name
    return apply_renaming(base, r, name), Arrow(base.name, name, r, "rename")


def eval_instance(source: TheoryPresentation, base: TheoryPresentation,
                  via: Renaming, env: "LibraryEnv" | None = None,
                  name: Optional[str] = None):
    """Rename ``source`` into ``base``'s vocabulary and assert an arrow
    ``base -> result``.  Only the signature must be included; axioms of
    ``base`` become proof obligations."""
    _check_domain(source, via)
    name = name or source.name
    result = apply_renaming(source, via, name)
    check_inclusion(base, result, IDENTITY, instance=True)
    return result, Arrow(base.name, name, IDENTITY, "instance")


# ---------------------------------------------------------------------------
# morphism inference


def infer_arrow(source, target, env: LibraryEnv) -> Arrow:
    """Find the arrow ``source -> target`` induced by the constructions.

    Every path of recorded arrows is composed; distinct composites are an
    ambiguity.  Without a path, an identity inclusion is tried.
    """
    src = source if isinstance(source, str) else source.name
    dst = target if isinstance(target, str) else target.name
    if src == dst:
        return Arrow(src, dst, IDENTITY, "composite")
    symbols = symbols_of(env[src])
    incoming = env.incoming()
    memo: dict = {}

    def reach(node: str, stack: frozenset) -> frozenset:
        if node == src:
            return frozenset({IDENTITY})
        if node in memo:
            return memo[node]
        found = set()
        for a in incoming.get(node, ()):
            if a.source in stack:
                continue
            for r in reach(a.source, stack | {node}):
                found.add(compose_renamings(r, a.renaming).restrict(symbols))
        memo[node] = frozenset(found)
        return memo[node]

    composites = reach(dst, frozenset())
    if len(composites) > 1:
        shown = "; ".join(sorted(str(r) for r in composites))
        raise AmbiguousMorphism(
            f"paths from {src} to {dst} induce different renamings: {shown}")
    if composites:
        return Arrow(src, dst, next(iter(composites)), "composite")
    try:
        check_inclusion(env[src], env[dst], IDENTITY)
    except BrokenArrow as exc:
        raise NoMorphism(f"cannot infer an arrow {src} -> {dst}: "
                         f"{exc.message}") from None
    return Arrow(src, dst, IDENTITY, "composite")


# ---------------------------------------------------------------------------
# pushouts


def _merge(decls: list, incoming, shared: set, left: str, right: str) -> None:
    names = set(declared_names(incoming))
    overlapping = [k for k, d in enumerate(decls)
                   if names & set(declared_names(d))]
    if not overlapping:
        decls.append(incoming)
        return
    olds = [decls[k] for k in overlapping]
    if len(olds) == 1 and alpha_equal(olds[0], incoming):
        return
    clashing = names & {n for o in olds for n in declared_names(o)}
    if clashing <= shared:
        # a shared symbol realised more concretely on one side wins
        if all(satisfies(incoming, old) for old in olds):
            decls[overlapping[0]] = incoming
            for k in reversed(overlapping[1:]):
                del decls[k]
            return
        if len(olds) == 1 and satisfies(olds[0], incoming):
            return
    name = sorted(clashing)[0]
    if name in shared:
        raise NameClash(f"{left} and {right} give different declarations of "
                        f"the shared symbol {name!r}")
    raise NameClash(
        f"{left} and {right} both declare {name!r} differently; rename one "
        f"of them, e.g. {right}[{name} |-> {name}2]")


def eval_combine(parts: list, over: TheoryPresentation, env: LibraryEnv,
                 name: str = "pushout"):
    """Iterated binary pushout of ``parts`` over the shared theory ``over``.

    Returns the result and the arrows from each part into it.
    """
    base_symbols = sorted(symbols_of(over))
    legs = [infer_arrow(over, p, env).renaming for p in parts]
    acc_rho = legs[0]
    decls = list(parts[0].decls)
    shared = {acc_rho(s) for s in base_symbols}
    arrows = [Arrow(parts[0].name, name, IDENTITY, "combine-leg")]
    for part, rho in zip(parts[1:], legs[1:]):
        sigma = Renaming((rho(s), acc_rho(s)) for s in base_symbols)
        try:
            carried = apply_renaming(part, sigma)
        except CaptureError as exc:
            raise NameClash(
                f"combining {part.name} into {name}: {exc.message}; rename "
                f"the clashing symbol first") from None
        for d in carried.decls:
            _merge(decls, d, shared, arrows[0].source, part.name)
        arrows.append(Arrow(part.name, name,
                            sigma.restrict(symbols_of(part)), "combine-leg"))
    return TheoryPresentation(name, tuple(decls)), arrows


# ---------------------------------------------------------------------------
# driver


def evaluate(definition: Definition, env: LibraryEnv) -> None:
    """Evaluate one definition and record it (with its arrows) in ``env``."""
    from theoria import generators

    name, expr = definition.name, definition.expr
    try:
        if isinstance(expr, Literal):
            p, arrows = eval_literal(name, expr.decls, env.macros), []
        elif isinstance(expr, ExtendedBy):
            p, a = eval_extend(env[expr.base], expr.decls, name, env.macros)
            arrows = [a]
        elif isinstance(expr, Rename):
            p, a = eval_rename(env[expr.base], expr.renaming, name)
            arrows = [a]
        elif isinstance(expr, Combine):
            p, arrows = eval_combine([env[n] for n in expr.parts],
                                     env[expr.over], env, name)
        elif isinstance(expr, Instance):
            p, a = eval_instance(env[expr.source], env[expr.base], expr.via,
                                 env, name)
            arrows = [a]
        elif isinstance(expr, GeneratorCall):
            p, arrows = generators.generate(expr.kind, env[expr.arg], name), []
        else:
            raise TypeError(f"unknown theory expression {expr!r}")
        env.add(p, arrows, definition)
    except TheoriaError as exc:
        if exc.definition is None:
            exc.definition = name
        if exc.pos is None:
            exc.pos = definition.pos
        raise


def elaborate_library(src: SourceFile, env: LibraryEnv | None = None) -> LibraryEnv:
    env = LibraryEnv() if env is None else env
    for definition in src.definitions:
        evaluate(definition, env)
    return env


def elaborate_text(text: str, filename: str = "<string>",
                   env: LibraryEnv | None = None) -> LibraryEnv:
    env = LibraryEnv() if env is None else env
    src = parse_library(text, filename, known=env.theories,
                        macro_names=env.macros)
    return elaborate_library(src, env)


def elaborate_files(paths: Iterable, env: LibraryEnv | None = None) -> LibraryEnv:
    """Elaborate several files in order into one shared environment."""
    env = LibraryEnv() if env is None else env
    for path in paths:
        path = Path(path)
        elaborate_text(path.read_text(encoding="utf-8"), str(path), env)
    return env
