from __future__ import annotations

import pytest

from theoria.core import Renaming, alpha_equal, apply_renaming, equivalent
from theoria.errors import (
    ForeignSort, NotSingleSorted, TheoriaError, UnsupportedDeclaration,
)
from theoria.generators import (
    RecordVisitor, Visitor, gen_homomorphism, gen_record_type,
    gen_substructure, gen_term_algebra, lift_renaming,
    traverse_theory,
)
from theoria.parser import parse_declarations
from theoria.syntax import (
    DataType, DefinedIn, Forall, OpDecl, PredicateType,
    RecordType, Subtype, TheoryPresentation, TypeDefDecl,
)
from conftest import golden
from goldens import golden_theory, golden_typedef, matches_golden


def ops(p):
    return [d for d in p.decls if isinstance(d, OpDecl)]


# -- goldens ----------------------------------------------------------------------

def test_record_golden(corpus_env):
    got = gen_record_type(corpus_env["Semigroup"])
    assert alpha_equal(got, golden_typedef("semigroup_record_expanded.msl",
                                           corpus_env.theories))
    assert alpha_equal(got, golden_typedef("semigroup_record.msl",
                                           corpus_env.theories))


def test_record_examples(corpus_env):
    assert gen_record_type(corpus_env["Carrier"]) == RecordType(
        (("U", gen_record_type(corpus_env["Carrier"]).fields[0][1]),))
    with pytest.raises(UnsupportedDeclaration):
        gen_record_type(corpus_env["Bit_Base"])


def test_term_algebra_golden(corpus_env):
    got = gen_term_algebra(corpus_env["Monoid"])
    for name in ("monoid_term.msl", "monoid_term_short.msl"):
        (d,) = golden_theory(name, corpus_env.theories).decls
        assert alpha_equal(got, d.definition), name


def test_term_algebra_examples(corpus_env):
    assert gen_term_algebra(corpus_env["Carrier"]) == DataType("X", ())
    sg = gen_term_algebra(corpus_env["Semigroup"])
    assert [c for c, _ in sg.constructors] == ["#*"]
    with pytest.raises(NotSingleSorted):
        gen_term_algebra(corpus_env["MultiCarrier"])
    with pytest.raises(NotSingleSorted):
        gen_term_algebra(corpus_env["Empty"])
    u, g = parse_declarations("U : type; g : S -> S", generated=True)
    with pytest.raises(ForeignSort):
        gen_term_algebra(TheoryPresentation("T", (u, g)))


def test_homomorphism_golden(corpus_env):
    got = gen_homomorphism(corpus_env["Semigroup"])
    assert got.name == "SemigroupH"
    assert equivalent(got, golden_theory("semigroup_h.msl", corpus_env.theories))
    assert got == corpus_env["SemigroupH"]


def test_substructure_golden(corpus_env):
    got = gen_substructure(corpus_env["Semigroup"])
    assert got.name == "SubSemigroup"
    assert matches_golden(got, golden_theory("sub_semigroup.msl", corpus_env.theories))


def test_homomorphism_of_carrier(corpus_env):
    q = gen_homomorphism(corpus_env["Carrier"])
    assert [d.name for d in q.decls] == ["CarrierType", "A", "B", "f"]
    assert list(q.axioms) == []


def test_homomorphism_relations_use_implication(corpus_env):
    q = gen_homomorphism(corpus_env["BinaryRelation"])
    (ax,) = q.axioms
    assert ax.name == "pres_R" and type(ax.body.body).__name__ == "Implies"


def test_vector_space_has_five_preservation_axioms(corpus_env):
    q = gen_homomorphism(corpus_env["VectorSpace"])
    assert [f.name for f in ops(q)][-2:] == ["f_V", "f_F"]
    assert sorted(a.name for a in q.axioms) == sorted(
        ["pres_0", "pres_+", "pres_-", "pres_1", "pres_*"])
    nullary = [a for a in q.axioms if not isinstance(a.body, Forall)]
    assert {a.name for a in nullary} == {"pres_0", "pres_1"}
    # the five golden axioms, compared by the sorts they quantify over
    shapes = []
    for d in parse_declarations(golden("vector_space_hom.msl"), generated=True):
        sorts, body = [], d.body
        while isinstance(body, Forall):
            sorts += [t.name for _, t in body.vars]
            body = body.body
        shapes.append(sorted(sorts))
    got = sorted(sorted(t.field for _, t in a.body.vars)
                 if isinstance(a.body, Forall) else [] for a in q.axioms)
    assert got == sorted(shapes)


def test_substructure_examples(corpus_env):
    q = gen_substructure(corpus_env["Carrier"])
    assert [d.name for d in q.decls] == ["CarrierType", "A", "V", "subtype_V"]
    assert isinstance(q.axioms[0].body, Subtype)
    q = gen_substructure(corpus_env["PointedCarrier"])
    pres_e = q.lookup("pres_e")
    assert isinstance(pres_e.body, DefinedIn) and str(pres_e.body.term.op) == "A.e"
    with pytest.raises(NotSingleSorted):
        gen_substructure(corpus_env["MultiCarrier"])


def test_concrete_theories_are_rejected(corpus_env):
    for gen in (gen_record_type, gen_term_algebra, gen_homomorphism,
                gen_substructure):
        for name in ("Bit_Base", "Bit_And", "BitList"):
            with pytest.raises(UnsupportedDeclaration):
                gen(corpus_env[name])


def test_typefrom_is_stored_expanded(corpus_env):
    (td,) = corpus_env["SemigroupModel"].decls
    assert isinstance(td, TypeDefDecl) and isinstance(td.definition, RecordType)
    assert td.origin == "Semigroup"


# -- laws over the whole corpus -------------------------------------------------------

def _generable(env, gen):
    for name, p in env.theories.items():
        try:
            yield p, gen(p)
        except TheoriaError:
            continue


def test_axiom_count_laws(corpus_env):
    seen = 0
    for p, q in _generable(corpus_env, gen_homomorphism):
        assert len(q.axioms) == len(ops(p)), p.name
        seen += 1
    for p, q in _generable(corpus_env, gen_substructure):
        n = len([d for d in ops(p) if not isinstance(d.type, PredicateType)])
        assert len(q.axioms) == n + 1, p.name
    for p, t in _generable(corpus_env, gen_term_algebra):
        n = len([d for d in ops(p) if not isinstance(d.type, PredicateType)])
        assert len(t.constructors) == n, p.name
    assert seen >= 20


def test_naturality_under_renaming(corpus_env):
    checked = 0
    for p, q in _generable(corpus_env, gen_homomorphism):
        names = [d.name for d in ops(p)]
        if not names:
            continue
        r = Renaming({n: f"op{k}" for k, n in enumerate(names)})
        renamed = gen_homomorphism(apply_renaming(p, r), q.name)
        assert equivalent(renamed, lift_renaming(q, r)), p.name
        checked += 1
    assert checked >= 20


# -- traversal ----------------------------------------------------------------------

def test_identity_visitor(corpus_env):
    for p in corpus_env.theories.values():
        assert traverse_theory(p, Visitor()) == p


def test_record_visitor_matches_direct_construction(corpus_env):
    for p, rec in _generable(corpus_env, gen_record_type):
        direct = RecordType(tuple(
            (d.name, d.type) if isinstance(d, OpDecl) else
            (d.name, traverse_theory(TheoryPresentation("x", (d,)),
                                     RecordVisitor()).fields[0][1])
            for d in p.decls))
        assert rec == direct


class _DropAxioms(Visitor):
    def axiom(self, d):
        return []


def test_axiom_dropping_visitor(corpus_env):
    q = traverse_theory(corpus_env["LeftNearSemiring"], _DropAxioms())
    assert sorted(d.name for d in q.decls) == sorted(["U", "*", "+", "0"])


def test_golden_matching_detects_differences(corpus_env):
    expected = golden_theory("sub_semigroup.msl", corpus_env.theories)
    assert not matches_golden(gen_substructure(corpus_env["PointedMagma"]), expected)
    assert not matches_golden(gen_substructure(corpus_env["Carrier"]), expected)
