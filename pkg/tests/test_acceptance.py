"""Acceptance criteria; each test prints one PASS/FAIL line.

Tolerances: declaration sets are compared up to bound-variable names and
order (alpha equality); counts are exact; wall-clock limits are 1 s per
command for criteria 1 to 3 and 10 s for the corpus check.
"""

from __future__ import annotations

import contextlib
import dataclasses
import io
import json
import time

from hypothesis import given, settings

from theoria.cli import library_stats, main
from theoria.core import (
    Renaming, alpha_equal, apply_renaming, equivalent, symbols_of, validate_arrow,
)
from theoria.corpus import load_manifest
from theoria.errors import TheoriaError
from theoria.elaborator import elaborate_files, elaborate_text
from theoria.generators import (
    gen_homomorphism, gen_substructure, resolve_generated,
)
from theoria.parser import parse_library, parse_type
from theoria.printer import pretty_print
from theoria.serialize import theory_from_json
from theoria.syntax import (
    AxiomDecl, Forall, FunctionType, InductiveDecl, OpDecl, TheoryPresentation,
    TypeDecl,
)
from theoria.typecheck import check_theory, errors_only
from conftest import golden
from goldens import golden_theory, golden_typedef, matches_golden
from laws import (
    bracketings, check_bit_association, check_commutative, check_unit,
    pushout_cases,
)

COMMAND_LIMIT = 1.0
CORPUS_LIMIT = 10.0
PROPERTY_EXAMPLES = 200

RESULTS: list = []


@contextlib.contextmanager
def criterion(n: int, title: str):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        reason = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        line = f"FAIL criterion {n}: {title}: {reason}"
        RESULTS.append(line)
        print(line)
        raise
    line = f"PASS criterion {n}: {title} ({time.perf_counter() - start:.2f} s)"
    RESULTS.append(line)
    print(line)


def files(*names):
    return [str(p) for p in load_manifest().paths() if p.name in names]


def timed(*argv):
    out, err = io.StringIO(), io.StringIO()
    start = time.perf_counter()
    code = main(list(argv), out, err)
    elapsed = time.perf_counter() - start
    assert code == 0, err.getvalue()
    assert elapsed < COMMAND_LIMIT, f"{argv[0]} took {elapsed:.2f} s"
    return out.getvalue()


def _literal(text, generated=False):
    (d,) = parse_library(text, generated=generated).definitions
    return TheoryPresentation(d.name, d.expr.decls)


# ---------------------------------------------------------------------------

def test_criterion_1_flat_golden():
    with criterion(1, "expand LeftNearSemiring matches the flat listing"):
        out = timed("expand", *files("base.msl", "algebra.msl"), "LeftNearSemiring")
        got = _literal(out)
        expected = _literal(golden("flat_left_near_semiring.msl"))
        assert equivalent(got, expected), out
        kinds = [type(d).__name__ for d in got.decls]
        binary = [d for d in got.decls if isinstance(d, OpDecl)
                  and isinstance(d.type, FunctionType) and len(d.type.args) == 2]
        assert kinds.count("TypeDecl") == 1 and len(binary) == 2
        assert kinds.count("OpDecl") == 3 and kinds.count("AxiomDecl") == 6


def test_criterion_2_generator_goldens(corpus_env):
    with criterion(2, "record, terms, hom and sub goldens"):
        corpus = [str(p) for p in load_manifest().paths()]
        theories = corpus_env.theories
        record = parse_type(timed("gen", "record", *corpus, "Semigroup"),
                            generated=True)
        assert record == golden_typedef("semigroup_record_expanded.msl", theories)
        terms = parse_type(timed("gen", "terms", *corpus, "Monoid"), generated=True)
        (mterm,) = golden_theory("monoid_term.msl", theories).decls
        assert alpha_equal(terms, mterm.definition)
        for kind, name in (("hom", "semigroup_h.msl"), ("sub", "sub_semigroup.msl")):
            out = timed("gen", kind, *corpus, "Semigroup")
            got = resolve_generated(_literal(out, generated=True), theories)
            assert matches_golden(got, golden_theory(name, theories)), out


def test_criterion_3_vector_space_homomorphism():
    with criterion(3, "VectorSpace homomorphism has 5 preservation axioms"):
        corpus = [str(p) for p in load_manifest().paths()]
        out = timed("gen", "hom", *corpus, "VectorSpace")
        q = _literal(out, generated=True)
        pres = [d for d in q.decls if isinstance(d, AxiomDecl)
                and d.name.startswith("pres_")]
        assert len(pres) == 5, [d.name for d in pres]
        nullary = {d.name: pretty_print(TheoryPresentation("x", (d,)))
                   for d in pres if not isinstance(d.body, Forall)}
        assert set(nullary) == {"pres_0", "pres_1"}
        assert "f_V(A.0) = B.0" in nullary["pres_0"]
        assert "f_F(A.1) = B.1" in nullary["pres_1"]


def test_criterion_4_pushout_laws():
    with criterion(4, f"pushout laws over {PROPERTY_EXAMPLES} examples each"):
        run = settings(max_examples=PROPERTY_EXAMPLES, deadline=None)
        run(given(pushout_cases())(check_commutative))()
        run(given(pushout_cases())(check_unit))()
        run(given(bracketings())(check_bit_association))()


def test_criterion_5_corpus_health(manifest):
    with criterion(5, "corpus health and the base hierarchy theory count"):
        start = time.perf_counter()
        env = elaborate_files(manifest.paths())
        for name, p in env.theories.items():
            assert errors_only(check_theory(p)) == [], name
        assert len(env.theories) >= 50
        assert len(env.theories) == manifest.expected_theory_count
        assert set(manifest.expected_names) <= set(env.theories)
        for a in env.arrows:
            validate_arrow(a, env)
        elapsed = time.perf_counter() - start
        assert elapsed < CORPUS_LIMIT, f"corpus took {elapsed:.2f} s"
        base_hierarchy = library_stats(elaborate_text(golden("base_hierarchy.msl"), "base_hierarchy.msl"))
        # the required count; the base file itself has fourteen definitions
        assert base_hierarchy["theories"] == 17, (
            f"stats on the base hierarchy reports {base_hierarchy['theories']} theories, "
            "17 required")


def test_criterion_6_round_trips(corpus_env):
    with criterion(6, "printer, JSON and renaming round-trips"):
        for name, p in corpus_env.theories.items():
            again = _literal(pretty_print(p, full=True), generated=True)
            assert equivalent(again, p), name
        corpus = [str(x) for x in load_manifest().paths()]
        for name in ("LeftNearSemiring", "Bit", "SemigroupH", "VectorSpace"):
            obj = json.loads(timed("expand", *corpus, name, "--format", "json"))
            back = theory_from_json(obj)
            p = corpus_env[name]
            assert back.name == name and len(back.decls) == len(p.decls)
            assert equivalent(back, p) and back.decls == tuple(
                dataclasses.replace(d, pos=None) for d in p.decls)
        generated = []
        for p in corpus_env.theories.values():
            for gen in (gen_homomorphism, gen_substructure):
                try:
                    generated.append(gen(p))
                except TheoriaError:
                    pass
        assert len(generated) >= 40
        for q in generated:
            r = Renaming({s: f"r{k}" for k, s in enumerate(sorted(symbols_of(q)))})
            assert apply_renaming(apply_renaming(q, r), r.inverse()) == q, q.name


def test_criterion_7_instance_and_obligations():
    with criterion(7, "BitCarrier instance and BitList"):
        env = elaborate_files(files("base.msl", "concrete.msl"))
        arrows = [a for a in env.arrows if a.target == "BitCarrier"]
        assert [(a.source, a.provenance) for a in arrows] == [("Carrier", "instance")]
        u, lst = env["BitList"].decls
        assert isinstance(u, InductiveDecl) and u.name == "U"
        assert [c for c, _ in u.constructors] == ["0", "1"]
        assert isinstance(lst, InductiveDecl) and lst.name == "list"
        cons = dict(lst.constructors)["cons"]
        assert cons.args[0].name == "U"
        assert env.obligations == []
        assert not any(isinstance(d, TypeDecl) for d in env["BitList"].decls)
