from __future__ import annotations

import pytest

from theoria.core import equivalent
from theoria.elaborator import elaborate_text
from theoria.parser import (
    parse_formula, parse_library, parse_term,
)
from theoria.printer import (
    pretty_print, pretty_print_compact, print_source, show_formula, show_term,
    show_type,
)
from theoria.syntax import Literal, TheoryPresentation


def test_empty_theory(corpus_env):
    assert pretty_print(corpus_env["Empty"]) == "Empty := Theory {}"


def test_compact_magma(corpus_env):
    assert pretty_print_compact(corpus_env["Magma"]) == (
        "Theory { U : type; * : (U, U) -> U }")


def test_semigroup_layout(corpus_env):
    assert pretty_print(corpus_env["Semigroup"]) == (
        "Semigroup := Theory {\n"
        "  U : type;\n"
        "  * : (U, U) -> U;\n"
        "  axiom associative_* := forall x, y, z : U. (x * y) * z = x * (y * z)\n"
        "}")


@pytest.mark.parametrize("text", [
    "x + 0", "(x * y) * z", "x * (y + z)", "-x", "prime(prime(x))",
    "f(x A.* y)", "A.e", "case x of { | 0 -> 0 | 1 -> y }",
])
def test_term_round_trip(text):
    t = parse_term(text)
    assert show_term(t) == text and parse_term(show_term(t)) == t


@pytest.mark.parametrize("text", [
    "forall x : U. x = x",
    "not(1 = 0)",
    "forall b : bit. b = 1 or b = 0",
    "(a = b and b = c) implies a = c",
    "a = b implies (b = c implies a = c)",
    "forall x, y : V. defined-in(x A.* y, V)",
    "V <: A.U",
    "forall x, y : A.U. A.R(x, y) implies B.R(f(x), f(y))",
    "forall x, y : A.U. x A.<= y implies f(x) B.<= f(y)",
])
def test_formula_round_trip(text):
    f = parse_formula(text)
    assert parse_formula(show_formula(f)) == f


@pytest.mark.parametrize("text", ["U", "(U, U) -> U", "U?", "(U, U)?",
                                  "U -> list -> list"])
def test_type_round_trip(text):
    from theoria.parser import parse_type
    assert show_type(parse_type(text)) == text


def test_typefrom_abbreviation(corpus_env):
    q = corpus_env["SemigroupH"]
    short, full = pretty_print(q), pretty_print(q, full=True)
    assert "type SemigroupType = TypeFrom(Semigroup);" in short
    assert "ProofOf(forall x, y, z : U." in full


def test_corpus_pretty_print_round_trip(corpus_env):
    for name, p in corpus_env.theories.items():
        text = pretty_print(p, full=True)
        (d,) = parse_library(text, generated=True).definitions
        assert isinstance(d.expr, Literal)
        assert equivalent(TheoryPresentation(name, d.expr.decls), p), name


def test_source_round_trip(corpus_path):
    for f in sorted(corpus_path.glob("*.msl")):
        src = parse_library(f.read_text(), known=_names_before(f, corpus_path))
        again = parse_library(print_source(src),
                              known=_names_before(f, corpus_path))
        assert [d.name for d in again.definitions] == [
            d.name for d in src.definitions]
        for a, b in zip(src.definitions, again.definitions):
            assert _strip(a.expr) == _strip(b.expr), a.name


def _names_before(path, corpus_path):
    from theoria.corpus import load_manifest
    names = []
    for p in load_manifest().paths():
        if p.name == path.name:
            break
        names += [d.name for d in parse_library(p.read_text(),
                                                known=names).definitions]
    return names


def _strip(expr):
    import dataclasses
    if hasattr(expr, "decls"):
        return dataclasses.replace(expr, decls=tuple(
            dataclasses.replace(d, pos=None) for d in expr.decls))
    return expr


def test_expanded_output_re_elaborates(corpus_env):
    text = pretty_print(corpus_env["LeftNearSemiring"])
    env = elaborate_text(text)
    assert equivalent(env["LeftNearSemiring"], corpus_env["LeftNearSemiring"])
