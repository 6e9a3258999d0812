"""Pushout-law checks shared by the property tests and the acceptance run."""

from __future__ import annotations

import itertools

from hypothesis import strategies as st

from theoria.core import Renaming, apply_renaming, equivalent, symbols_of
from theoria.corpus import load_manifest
from theoria.elaborator import LibraryEnv, elaborate_files, evaluate
from theoria.syntax import (
    Combine, Definition, ExtendedBy, Literal, OpDecl, Rename, TypeDecl,
)
from strategies import axioms, extension_decls, operations

BIT_PARTS = ("Bit_And", "Bit_Or", "Bit_Not", "Bit_Implies", "Bit_Xor",
             "Bit_Xnor")


@st.composite
def pushout_cases(draw):
    """A base T, a part shared by A and B, private parts, and whether B
    reaches T through a renaming."""
    t_ops = draw(operations("t_", max_size=2))
    t = [TypeDecl("U")] + t_ops + draw(axioms(t_ops, "t_", max_size=1))
    shared = draw(extension_decls(t_ops, "s_", max_ops=1))
    visible = t_ops + [d for d in shared if isinstance(d, OpDecl)]
    a = shared + draw(extension_decls(visible, "a_"))
    b = shared + draw(extension_decls(visible, "b_"))
    return {"T": tuple(t), "A": tuple(a), "B": tuple(b),
            "rename": draw(st.booleans())}


def build(case) -> tuple:
    """Elaborate the case; returns the environment and B's leg renaming."""
    env = LibraryEnv()
    evaluate(Definition("T", Literal(case["T"])), env)
    evaluate(Definition("A", ExtendedBy("T", case["A"])), env)
    evaluate(Definition("B0", ExtendedBy("T", case["B"])), env)
    leg = Renaming()
    if case["rename"]:
        leg = Renaming({s: f"bt_{s}" for s in sorted(symbols_of(env["T"]))})
    evaluate(Definition("B", Rename("B0", leg)), env)
    for name, parts in (("AB", ("A", "B")), ("BA", ("B", "A")),
                        ("AT", ("A", "T"))):
        evaluate(Definition(name, Combine(parts, "T")), env)
    return env, leg


def check_commutative(case) -> None:
    env, leg = build(case)
    # B's leg renames T; seen from B's side the shared names follow it
    assert equivalent(env["BA"], apply_renaming(env["AB"], leg, "BA"))
    if not leg:
        assert equivalent(env["AB"], env["BA"])


def check_unit(case) -> None:
    env, _ = build(case)
    assert equivalent(env["AT"], env["A"])


_BIT_ENV = None


def bit_env() -> LibraryEnv:
    global _BIT_ENV
    if _BIT_ENV is None:
        paths = [p for p in load_manifest().paths()
                 if p.name in ("base.msl", "concrete.msl")]
        _BIT_ENV = elaborate_files(paths)
    e = _BIT_ENV
    return LibraryEnv(dict(e.theories), list(e.arrows), list(e.obligations),
                      dict(e.definitions), e.macros)


@st.composite
def bracketings(draw):
    """A random nesting of the six Bit parts in a random order."""
    order = draw(st.permutations(BIT_PARTS))

    def tree(items):
        if len(items) == 1:
            return items[0]
        if len(items) > 2 and draw(st.booleans()):
            cuts = sorted(draw(st.sets(st.integers(1, len(items) - 1),
                                       min_size=1, max_size=len(items) - 1)))
        else:
            cuts = [draw(st.integers(1, len(items) - 1))]
        bounds = [0] + cuts + [len(items)]
        return tuple(tree(items[i:j]) for i, j in itertools.pairwise(bounds))

    return tree(list(order))


def check_bit_association(shape) -> None:
    env = bit_env()
    counter = itertools.count()

    def define(node):
        if isinstance(node, str):
            return node
        name = f"BitPart{next(counter)}"
        parts = tuple(define(n) for n in node)
        evaluate(Definition(name, Combine(parts, "Bit_Base")), env)
        return name

    assert equivalent(env[define(shape)], env["Bit"])
