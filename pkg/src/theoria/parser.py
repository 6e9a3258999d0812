"""Recursive-descent parser for theory libraries, formulas and types.

Grammar notes beyond the obvious:

* declarations inside a block are separated by ``;`` or by line breaks;
* qualified names ``A.U`` and ``A.*`` are written without spaces around
  the dot, which is how a quantifier's terminating dot is told apart;
* a name applied by juxtaposition (``prime x``) only takes an argument on
  the same line;
* ``generated=True`` admits the forms only the generators produce
  (``type N = ...``, records, ``data``, ``ProofOf``, ``A, B : T`` and
  axioms without a name or colon).
"""

from __future__ import annotations

from typing import Iterable, Optional

from theoria.core import Renaming
from theoria.errors import ForwardReference, ParseError
from theoria.lexer import Token, tokenize
from theoria.syntax import (
    And, Apply, AxiomDecl, Branch, Case, Clause, Combine, DataType, DefDecl,
    Definition, DefinedIn, Equal, ExtendedBy, FieldRef, Forall, FunctionType,
    GeneratorCall, Implies, InductiveDecl, Instance, Literal, Not, OpDecl, Or,
    Pos, PredApp, PredicateType, ProofOf, PropertyMacro, RecordType, Rename,
    SortRef, SourceFile, Subtype, TermsOf, TypeCall, TypeDecl, TypeDefDecl,
    TypeFrom, TypeKind, Var, referenced_theories,
)

_PRECEDENCE = {"<=": 0, "+": 1, "-": 1, "*": 2, "/": 2, "**": 2}
_TOP_GENERATORS = {"TypeFrom": "TypeFrom", "Homomorphism": "Homomorphism",
                   "Substructure": "Substructure"}


def _default_macro_names() -> frozenset:
    from theoria.macros import default_table

    return frozenset(default_table())


class Parser:
    def __init__(self, tokens: list, filename: str = "<string>", *,
                 generated: bool = False, macro_names: Iterable | None = None):
        self.toks = tokens
        self.i = 0
        self.filename = filename
        self.generated = generated
        self.macro_names = (frozenset(macro_names) if macro_names is not None
                            else _default_macro_names())
        self.anon = 0
        last = tokens[-1].pos if tokens else Pos(filename, 1, 1)
        self.eof = Token("eof", "<end of input>", last, True, True)

    # -- token helpers ------------------------------------------------------

    def peek(self, k: int = 0) -> Token:
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else self.eof

    def advance(self) -> Token:
        tok = self.peek()
        self.i += 1
        return tok

    def at(self, kind: str, text: str | None = None, k: int = 0) -> bool:
        return self.peek(k).is_(kind, text)

    def at_punct(self, text: str, k: int = 0) -> bool:
        return self.at("punct", text, k)

    def at_name(self, k: int = 0) -> bool:
        return self.peek(k).kind in ("ident", "op")

    def error(self, message: str, expected=()) -> ParseError:
        tok = self.peek()
        return ParseError(f"{message}, found {tok.text!r}", tok.pos, expected)

    def expect(self, kind: str, text: str | None = None) -> Token:
        if not self.at(kind, text):
            raise self.error("unexpected token", {text or kind})
        return self.advance()

    def expect_punct(self, text: str) -> Token:
        return self.expect("punct", text)

    def name(self) -> str:
        if not self.at_name():
            raise self.error("expected a name", {"name"})
        return self.advance().text

    def ident(self) -> str:
        return self.expect("ident").text

    def done(self) -> bool:
        return self.i >= len(self.toks)

    def _tight(self, k: int) -> bool:
        return not self.peek(k).space_before

    def at_qualified(self, k: int = 0) -> bool:
        """``NAME.NAME`` written without spaces."""
        return (self.at("ident", k=k) and self.at_punct(".", k + 1)
                and self._tight(k + 1) and self.at_name(k + 2)
                and self._tight(k + 2))

    # -- library level ------------------------------------------------------

    def library(self, known: Iterable = ()) -> SourceFile:
        defined = set(known)
        definitions = []
        while not self.done():
            tok = self.peek()
            name = self.ident()
            self.expect_punct(":=")
            expr = self.texpr()
            for ref in referenced_theories(expr):
                if ref not in defined:
                    raise ForwardReference(ref, tok.pos)
            if name in defined:
                raise ParseError(f"theory {name!r} is defined twice", tok.pos)
            defined.add(name)
            definitions.append(Definition(name, expr, tok.pos))
        return SourceFile(tuple(definitions), self.filename)

    def texpr(self):
        if self.at("kw", "Theory"):
            self.advance()
            return Literal(self.block())
        if self.at("kw", "combine"):
            self.advance()
            parts = [self.ident()]
            while self.at_punct(","):
                self.advance()
                parts.append(self.ident())
            if len(parts) < 2:
                raise self.error("combine needs at least two theories", {","})
            self.expect("kw", "over")
            return Combine(tuple(parts), self.ident())
        if self.at("kw", "instance"):
            self.advance()
            source = self.ident()
            self.expect("kw", "of")
            base = self.ident()
            self.expect("kw", "via")
            return Instance(source, base, self.renaming())
        if self.at_punct("&"):
            self.advance()
            return GeneratorCall("TermAlgebra", self.ident())
        if self.peek().text in _TOP_GENERATORS and self.at_punct("(", 1):
            kind = _TOP_GENERATORS[self.advance().text]
            self.advance()
            arg = self.ident()
            self.expect_punct(")")
            return GeneratorCall(kind, arg)
        base = self.ident()
        if self.at("kw", "extended"):
            self.advance()
            self.expect("kw", "by")
            return ExtendedBy(base, self.block())
        if self.at_punct("["):
            return Rename(base, self.renaming())
        raise self.error("expected a theory expression",
                         {"extended", "[", "Theory", "combine", "instance"})

    def renaming(self) -> Renaming:
        self.expect_punct("[")
        pairs = []
        if not self.at_punct("]"):
            while True:
                src = self.name()
                self.expect_punct("|->")
                pairs.append((src, self.name()))
                if not self.at_punct(","):
                    break
                self.advance()
        self.expect_punct("]")
        return Renaming(pairs)

    # -- declarations -------------------------------------------------------

    def block(self) -> tuple:
        self.expect_punct("{")
        decls: list = []
        while True:
            while self.at_punct(";"):
                self.advance()
            if self.at_punct("}"):
                break
            for d in self.declaration():
                self._add_decl(decls, d)
            if not (self.at_punct(";") or self.at_punct("}")
                    or self.peek().newline_before):
                raise self.error("declarations must be separated by ';' or "
                                 "a line break", {";", "}"})
        self.expect_punct("}")
        return tuple(decls)

    def _add_decl(self, decls: list, d) -> None:
        if isinstance(d, DefDecl) and d.type is None:
            for k, prev in enumerate(decls):
                if prev.name == d.name and isinstance(prev, OpDecl):
                    decls[k] = DefDecl(d.name, prev.type, d.clauses, prev.pos)
                    return
                if prev.name == d.name and isinstance(prev, DefDecl):
                    raise ParseError(f"{d.name!r} is defined twice", d.pos)
            raise ParseError(f"definition of {d.name!r} has no signature in "
                             "this block", d.pos)
        decls.append(d)

    def _anon_name(self) -> str:
        self.anon += 1
        return f"anon_axiom_{self.anon}"

    def declaration(self) -> list:
        tok = self.peek()
        pos = tok.pos
        if tok.is_("kw", "axiom"):
            self.advance()
            if self.at_punct(":") or self.at_punct(":="):
                self.advance()
                name = self._anon_name()
            elif self.at_name() and (self.at_punct(":", 1)
                                     or self.at_punct(":=", 1)):
                name = self.name()
                self.advance()
            elif self.generated:
                name = self._anon_name()
            else:
                raise self.error("expected an axiom name or ':'", {":", ":="})
            return [AxiomDecl(name, self.formula(), pos)]
        if tok.is_("kw", "Inductive"):
            self.advance()
            name = self.name()
            ctors = []
            first = True
            while True:
                if self.at_punct("|"):
                    self.advance()
                elif not (self.at_name() and self.at_punct(":", 1)
                          and (first or self.peek().newline_before)):
                    break
                cname = self.name()
                self.expect_punct(":")
                ctors.append((cname, self.typeexpr()))
                first = False
            return [InductiveDecl(name, tuple(ctors), pos)]
        if tok.is_("kw", "type") and self.generated:
            self.advance()
            name = self.name()
            self.expect_punct("=")
            definition = self.typeexpr()
            origin = (definition.theory
                      if isinstance(definition, (TypeFrom, TermsOf)) else None)
            return [TypeDefDecl(name, definition, origin, pos)]
        if not self.at_name():
            raise self.error("expected a declaration",
                             {"name", "axiom", "Inductive"})
        name = self.name()
        if self.at_punct("("):
            self.advance()
            params = []
            if not self.at_punct(")"):
                params.append(self.ident())
                while self.at_punct(","):
                    self.advance()
                    params.append(self.ident())
            self.expect_punct(")")
            self.expect_punct("=")
            rhs = self.term()
            return [DefDecl(name, None, (Clause(tuple(params), rhs),), pos)]
        names = [name]
        if self.generated:
            while self.at_punct(","):
                self.advance()
                names.append(self.name())
        self.expect_punct(":")
        if self.at("kw", "type"):
            self.advance()
            return [TypeDecl(n, pos) for n in names]
        t = self.typeexpr()
        return [OpDecl(n, t, pos) for n in names]

    # -- types --------------------------------------------------------------

    def typeexpr(self):
        args = self.type_atoms()
        if self.at_punct("?"):
            self.advance()
            return PredicateType(tuple(args))
        if self.at_punct("->"):
            self.advance()
            return FunctionType(tuple(args), self.typeexpr())
        if len(args) != 1:
            raise self.error("a type tuple must be followed by '->' or '?'",
                             {"->", "?"})
        return args[0]

    def type_atoms(self) -> list:
        tok = self.peek()
        if tok.is_("punct", "("):
            self.advance()
            args = [self.typeexpr()]
            while self.at_punct(","):
                self.advance()
                args.append(self.typeexpr())
            self.expect_punct(")")
            return args
        if tok.is_("kw", "type"):
            self.advance()
            return [TypeKind()]
        if tok.is_("punct", "&"):
            self.advance()
            return [TermsOf(self.ident())]
        if self.generated and tok.is_("punct", "{"):
            return [self.record_type()]
        if self.generated and tok.is_("kw", "data"):
            return [self.data_type()]
        if self.generated and tok.text in ("ProofOf", "TypeFrom") \
                and self.at_punct("(", 1):
            self.advance()
            self.advance()
            if tok.text == "ProofOf":
                inner = ProofOf(self.formula())
            else:
                inner = TypeFrom(self.ident())
            self.expect_punct(")")
            return [inner]
        if self.at_qualified():
            record = self.advance().text
            self.advance()
            return [FieldRef(record, self.advance().text)]
        if tok.kind == "ident":
            self.advance()
            if self.at_punct("(") and self._tight(0):
                self.advance()
                args = [self.name()]
                while self.at_punct(","):
                    self.advance()
                    args.append(self.name())
                self.expect_punct(")")
                return [TypeCall(tok.text, tuple(args))]
            return [SortRef(tok.text)]
        raise self.error("expected a type", {"name", "(", "type"})

    def record_type(self) -> RecordType:
        self.expect_punct("{")
        fields = []
        if not self.at_punct("}"):
            while True:
                n = self.name()
                self.expect_punct(":")
                fields.append((n, self.typeexpr()))
                if not self.at_punct(","):
                    break
                self.advance()
        self.expect_punct("}")
        return RecordType(tuple(fields))

    def data_type(self) -> DataType:
        self.expect("kw", "data")
        binder = self.ident()
        self.expect_punct(".")
        ctors = []
        while self.at_punct("#") or (ctors and self.at_punct("|")):
            if self.at_punct("|"):
                self.advance()
            self.expect_punct("#")
            if not self._tight(0):
                raise self.error("constructor name must follow '#' directly")
            cname = "#" + self.name()
            self.expect_punct(":")
            ctors.append((cname, self.typeexpr()))
        return DataType(binder, tuple(ctors))

    # -- formulas -----------------------------------------------------------

    def formula(self):
        lhs = self.or_formula()
        if self.at("kw", "implies"):
            self.advance()
            return Implies(lhs, self.formula())
        return lhs

    def or_formula(self):
        lhs = self.and_formula()
        while self.at("kw", "or"):
            self.advance()
            lhs = Or(lhs, self.and_formula())
        return lhs

    def and_formula(self):
        lhs = self.unary_formula()
        while self.at("kw", "and"):
            self.advance()
            lhs = And(lhs, self.unary_formula())
        return lhs

    def unary_formula(self):
        tok = self.peek()
        if tok.is_("kw", "not"):
            self.advance()
            return Not(self.unary_formula())
        if tok.is_("kw", "forall"):
            self.advance()
            binders = self.binders()
            self.expect_punct(".")
            return Forall(binders, self.formula())
        if tok.is_("kw", "defined-in"):
            self.advance()
            self.expect_punct("(")
            t = self.term()
            self.expect_punct(",")
            ty = self.typeexpr()
            self.expect_punct(")")
            return DefinedIn(t, ty)
        if tok.is_("punct", "("):
            mark = self.i
            try:
                return self.atomic_formula()
            except ParseError:
                self.i = mark
            self.advance()
            inner = self.formula()
            self.expect_punct(")")
            return inner
        return self.atomic_formula()

    def binders(self) -> tuple:
        out = []
        while True:
            names = [self.ident()]
            while self.at_punct(","):
                self.advance()
                names.append(self.ident())
            self.expect_punct(":")
            t = self.typeexpr()
            out.extend((n, t) for n in names)
            if not self.at_punct(","):
                return tuple(out)
            self.advance()

    def atomic_formula(self):
        t = self.term()
        if self.at_punct("="):
            self.advance()
            return Equal(t, self.term())
        if self.at_punct("<:"):
            self.advance()
            return Subtype(self._term_as_type(t), self.typeexpr())
        if isinstance(t, Apply) and t.args:
            if (isinstance(t.op, str) and t.op in self.macro_names
                    and all(_macro_arg(a) is not None for a in t.args)):
                return PropertyMacro(t.op, tuple(_macro_arg(a) for a in t.args))
            return PredApp(t.op, t.args)
        raise self.error("expected a formula", {"=", "<:"})

    def _term_as_type(self, t):
        if isinstance(t, Var):
            return SortRef(t.name)
        if isinstance(t, Apply) and isinstance(t.op, FieldRef) and not t.args:
            return t.op
        raise self.error("left side of '<:' must be a type")

    # -- terms --------------------------------------------------------------

    def term(self, level: int = 0):
        if level > 2:
            return self.unary_term()
        lhs = self.term(level + 1)
        while True:
            op = self._infix(level)
            if op is None:
                return lhs
            lhs = Apply(op, (lhs, self.term(level + 1)))

    def _infix(self, level: int):
        tok = self.peek()
        if tok.kind == "op":
            if tok.newline_before and self.at_punct(":", 1):
                return None  # next declaration starts with an operator name
            if _PRECEDENCE[tok.text.rstrip("'")] == level:
                return self.advance().text
            return None
        if self.at_qualified() and self.at("op", k=2):
            if _PRECEDENCE[self.peek(2).text.rstrip("'")] == level:
                record = self.advance().text
                self.advance()
                return FieldRef(record, self.advance().text)
        return None

    def unary_term(self):
        tok = self.peek()
        if tok.kind == "op" and not self.at_punct(")", 1):
            self.advance()
            if self.at_punct("("):
                args = self.paren_terms()
                if len(args) > 1:
                    return Apply(tok.text, tuple(args))
                return Apply(tok.text, (args[0],))
            return Apply(tok.text, (self.unary_term(),))
        return self.primary()

    def paren_terms(self) -> list:
        self.expect_punct("(")
        args = []
        if not self.at_punct(")"):
            args.append(self.term())
            while self.at_punct(","):
                self.advance()
                args.append(self.term())
        self.expect_punct(")")
        return args

    def primary(self):
        tok = self.peek()
        if tok.is_("punct", "("):
            if self.at("op", k=1) and self.at_punct(")", 2):
                self.advance()
                name = self.advance().text
                self.advance()
                return Var(name)
            self.advance()
            inner = self.term()
            self.expect_punct(")")
            return inner
        if tok.is_("kw", "case"):
            return self.case_term()
        if self.at_qualified():
            record = self.advance().text
            self.advance()
            head = FieldRef(record, self.advance().text)
            if self.at_punct("("):
                return Apply(head, tuple(self.paren_terms()))
            return Apply(head, ())
        if tok.kind == "ident":
            self.advance()
            if self.at_punct("(") and not self.peek().newline_before:
                return Apply(tok.text, tuple(self.paren_terms()))
            if self._juxtaposed(tok):
                return Apply(tok.text, (self.primary(),))
            return Var(tok.text)
        raise self.error("expected a term", {"name", "("})

    def _juxtaposed(self, head: Token) -> bool:
        nxt = self.peek()
        return (head.text[0].isalpha() and nxt.kind == "ident"
                and not nxt.newline_before
                and not (self.at_qualified() and self.at("op", k=2)))

    def case_term(self):
        self.expect("kw", "case")
        scrutinee = self.term()
        self.expect("kw", "of")
        self.expect_punct("{")
        branches = []
        while True:
            while self.at_punct("|") or self.at_punct(";"):
                self.advance()
            if self.at_punct("}"):
                break
            ctor = self.name()
            vars_: list = []
            if self.at_punct("("):
                self.advance()
                vars_.append(self.ident())
                while self.at_punct(","):
                    self.advance()
                    vars_.append(self.ident())
                self.expect_punct(")")
            self.expect_punct("->")
            branches.append(Branch(ctor, tuple(vars_), self.term()))
        self.expect_punct("}")
        return Case(scrutinee, tuple(branches))


def _macro_arg(t):
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Apply) and isinstance(t.op, FieldRef) and not t.args:
        return t.op
    return None


# ---------------------------------------------------------------------------
# entry points


def _parser(text, filename="<string>", template=False, **kw) -> Parser:
    return Parser(tokenize(text, filename, template=template), filename, **kw)


def _whole(p: Parser, result):
    if not p.done():
        raise p.error("unexpected trailing input")
    return result


def parse_library(text: str, filename: str = "<string>", *,
                  known: Iterable = (), generated: bool = False,
                  macro_names: Optional[Iterable] = None) -> SourceFile:
    """Parse a whole ``.msl`` file.

    ``known`` lists theory names defined by earlier files, which may be
    referenced without a forward-reference error.
    """
    p = _parser(text, filename, generated=generated, macro_names=macro_names)
    return p.library(known)


def parse_formula(text: str, *, template: bool = False,
                  macro_names: Optional[Iterable] = None, generated=False):
    p = _parser(text, template=template, macro_names=macro_names,
                generated=generated)
    return _whole(p, p.formula())


def parse_term(text: str):
    p = _parser(text, macro_names=())
    return _whole(p, p.term())


def parse_type(text: str, *, generated: bool = False):
    p = _parser(text, macro_names=(), generated=generated)
    return _whole(p, p.typeexpr())


def parse_declarations(text: str, *, generated: bool = False) -> tuple:
    """Parse the inside of a block (without braces)."""
    p = _parser("{" + text + "\n}", generated=generated)
    return _whole(p, p.block())
