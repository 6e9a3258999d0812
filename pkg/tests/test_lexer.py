from __future__ import annotations

import pytest

from theoria.errors import LexError
from theoria.lexer import is_identifier, is_operator, tokenize
from conftest import golden


def kinds(text):
    return [(t.kind, t.text) for t in tokenize(text)]


def test_empty_theory_tokens():
    assert kinds("Empty := Theory {}") == [
        ("ident", "Empty"), ("punct", ":="), ("kw", "Theory"),
        ("punct", "{"), ("punct", "}")]


def test_empty_input():
    assert tokenize("") == []


def test_qualified_operator():
    assert kinds("x A.* y") == [
        ("ident", "x"), ("ident", "A"), ("punct", "."), ("op", "*"),
        ("ident", "y")]


def test_numerals_and_primes_are_identifiers():
    assert kinds("0 1 e2 O'") == [("ident", "0"), ("ident", "1"),
                                  ("ident", "e2"), ("ident", "O'")]


def test_primed_operator():
    assert kinds("+'") == [("op", "+'")]


def test_operator_axiom_names():
    assert kinds("right_Identity_+_0 rightInverse_+_-_0") == [
        ("ident", "right_Identity_+_0"), ("ident", "rightInverse_+_-_0")]


def test_keywords():
    toks = tokenize("combine extended by over axiom forall defined-in")
    assert all(t.kind == "kw" for t in toks)
    assert toks[-1].text == "defined-in"


def test_arrows_and_punctuation():
    assert [t.text for t in tokenize("|-> -> <: := ? & # |")] == [
        "|->", "->", "<:", ":=", "?", "&", "#", "|"]


def test_comments_are_skipped():
    assert kinds("U % a comment\n: type") == [
        ("ident", "U"), ("punct", ":"), ("kw", "type")]


def test_positions_and_layout():
    toks = tokenize("a\n  b c")
    assert (toks[1].pos.line, toks[1].pos.col) == (2, 3)
    assert toks[1].newline_before and not toks[2].newline_before
    assert toks[2].space_before


def test_unrecognized_character():
    with pytest.raises(LexError) as info:
        tokenize("U : type\n  @")
    assert (info.value.pos.line, info.value.pos.col) == (2, 3)


def test_template_placeholders_need_template_mode():
    with pytest.raises(LexError):
        tokenize("$1")
    assert tokenize("$1", template=True)[0].text == "$1"


def test_every_prefix_of_base_hierarchy_lexes():
    text = golden("base_hierarchy.msl")
    for k in range(0, len(text) + 1, 7):
        tokenize(text[:k])


def test_name_classes():
    assert is_operator("**") and is_operator("+'") and not is_operator("x")
    assert is_identifier("associative_*") and not is_identifier("forall")
