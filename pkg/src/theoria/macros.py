"""Property macros such as ``associative((*))`` and their expansion."""

from __future__ import annotations

import functools
import os
import re
from dataclasses import dataclass
from importlib import resources
from typing import Mapping

from theoria.core import rename_node, rewrite
from theoria.errors import (
    ArityMismatch, NonOperationArgument, ParseError, UnknownMacro,
)
from theoria.syntax import (
    Apply, FieldRef, FunctionType, PredApp, PredicateType, PropertyMacro,
    SortRef, Var,
)

MACROS_ENV = "THEORIA_MACROS"
_ENTRY = re.compile(r"^\s*([A-Za-z][A-Za-z0-9_]*)\s*/\s*(\d+)\s*:=\s*(.+)$")


@dataclass(frozen=True)
class Macro:
    name: str
    arity: int
    template: object  # Formula over $1..$n and $S


class MacroTable(Mapping):
    def __init__(self, macros=()):
        self._macros = {m.name: m for m in macros}

    def __getitem__(self, name):
        return self._macros[name]

    def __iter__(self):
        return iter(self._macros)

    def __len__(self):
        return len(self._macros)

    def extended(self, other: "MacroTable") -> "MacroTable":
        return MacroTable(list(self._macros.values()) + list(other.values()))


def parse_macro_table(text: str, filename: str = "<macros>") -> MacroTable:
    from theoria.parser import parse_formula

    macros = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        m = _ENTRY.match(line)
        if m is None:
            raise ParseError(f"{filename}:{lineno}: expected 'name/arity := "
                             f"formula'")
        name, arity, body = m.group(1), int(m.group(2)), m.group(3)
        template = parse_formula(body, template=True, macro_names=())
        macros.append(Macro(name, arity, template))
    return MacroTable(macros)


@functools.lru_cache(maxsize=None)
def _load(extra: str | None) -> MacroTable:
    text = resources.files("theoria").joinpath("macros.txt").read_text("utf-8")
    table = parse_macro_table(text, "macros.txt")
    if extra:
        with open(extra, encoding="utf-8") as fh:
            table = table.extended(parse_macro_table(fh.read(), extra))
    return table


def default_table() -> MacroTable:
    """The built-in macros, plus any file named by ``$THEORIA_MACROS``."""
    return _load(os.environ.get(MACROS_ENV) or None)


def _operated_sort(t):
    if isinstance(t, (FunctionType, PredicateType)):
        return t.args[0]
    return t


def expand_property_macro(m: PropertyMacro, table: Mapping,
                          signature: Mapping):
    """Expand ``m`` into a closed formula.

    ``signature`` maps each declared operation (or constant) to its type;
    the quantified sort is read off the first argument.
    """
    if m.name not in table:
        raise UnknownMacro(f"unknown property macro {m.name!r}")
    macro = table[m.name]
    if len(m.args) != macro.arity:
        raise ArityMismatch(f"{m.name} takes {macro.arity} argument(s), "
                            f"given {len(m.args)}")
    for a in m.args:
        if a not in signature:
            raise NonOperationArgument(
                f"argument {a} of {m.name} is not a declared operation")
    sort = _operated_sort(signature[m.args[0]])
    subst = {f"${k}": a for k, a in enumerate(m.args, 1)}
    # freshen template binders that would capture an argument
    protect = {a: a for a in m.args if isinstance(a, str)}
    if isinstance(sort, SortRef):
        protect[sort.name] = sort.name
    template = rename_node(macro.template, protect)

    def fill(node):
        if isinstance(node, Var) and node.name in subst:
            a = subst[node.name]
            return Apply(a, ()) if isinstance(a, FieldRef) else Var(a)
        if isinstance(node, Apply) and node.op in subst:
            return Apply(subst[node.op], node.args)
        if isinstance(node, PredApp) and node.pred in subst:
            return PredApp(subst[node.pred], node.args)
        if isinstance(node, SortRef) and node.name == "$S":
            return sort
        return node

    return rewrite(template, fill)


def expand_macros(formula, table: Mapping, signature: Mapping):
    """Expand every property macro occurring in ``formula``."""

    def step(node):
        if isinstance(node, PropertyMacro):
            return expand_property_macro(node, table, signature)
        return node

    return rewrite(formula, step)


def macro_uses(formula) -> list:
    found = []

    def visit(node):
        if isinstance(node, PropertyMacro):
            found.append(node.name)
        return node

    rewrite(formula, visit)
    return found
