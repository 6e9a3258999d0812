"""Command-line front end.

Exit status: 0 on success, 1 on a parse, elaboration or checking error,
2 on unreadable input or bad usage.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter

from theoria import serialize
from theoria.elaborator import LibraryEnv, elaborate_files
from theoria.errors import TheoriaError
from theoria.generators import (
    gen_homomorphism, gen_record_type, gen_substructure, gen_term_algebra,
)
from theoria.macros import macro_uses
from theoria.printer import pretty_print, show_texpr, show_type
from theoria.syntax import AxiomDecl, ExtendedBy, Literal
from theoria.typecheck import Diagnostic, check_theory

OK, FAILED, IO_ERROR = 0, 1, 2


class _IOFailure(Exception):
    pass


def _load(files) -> LibraryEnv:
    try:
        return elaborate_files(files)
    except OSError as exc:
        raise _IOFailure(f"{exc.filename}: {exc.strerror}") from None


def _report(exc: TheoriaError, stream) -> None:
    d = Diagnostic("error", type(exc).__name__,
                   f"{type(exc).__name__}: {exc}", None, exc.pos)
    print(d.render(), file=stream)


def _theory(env: LibraryEnv, name: str):
    return env[name]


def _provenance(env: LibraryEnv, name: str):
    definition = env.definitions.get(name)
    if definition is None:
        return None
    expr = definition.expr
    return {
        "file": definition.pos.file if definition.pos else None,
        "expr": type(expr).__name__,
        "source": (None if isinstance(expr, (Literal, ExtendedBy))
                   else show_texpr(expr)),
    }


# ---------------------------------------------------------------------------
# commands


def cmd_check(args, out, err) -> int:
    env = _load(args.files)
    errors = 0
    for name, p in env.theories.items():
        definition = env.definitions.get(name)
        fallback = definition.pos if definition else None
        for d in check_theory(p):
            if d.pos is None and fallback is not None:
                d = Diagnostic(d.severity, d.code, d.message, d.decl, fallback)
            print(d.render(), file=err)
            errors += d.severity == "error"
    for ob in env.obligations:
        definition = env.definitions.get(ob.arrow.target)
        pos = definition.pos if definition else None
        print(Diagnostic("note", "ProofObligation", str(ob), None,
                         pos).render(), file=err)
    return FAILED if errors else OK


def cmd_expand(args, out, err) -> int:
    env = _load(args.files)
    p = _theory(env, args.name)
    if args.format == "json":
        out.write(serialize.dumps(
            serialize.theory_to_json(p, _provenance(env, args.name))))
    else:
        out.write(pretty_print(p, full=args.full) + "\n")
    return OK


def cmd_gen(args, out, err) -> int:
    env = _load(args.files)
    p = _theory(env, args.name)
    if args.kind == "record":
        out.write(show_type(gen_record_type(p)) + "\n")
    elif args.kind == "terms":
        out.write(show_type(gen_term_algebra(p)) + "\n")
    elif args.kind == "hom":
        out.write(pretty_print(gen_homomorphism(p), full=args.full) + "\n")
    else:
        out.write(pretty_print(gen_substructure(p), full=args.full) + "\n")
    return OK


def cmd_graph(args, out, err) -> int:
    env = _load(args.files)
    if args.format == "json":
        out.write(serialize.dumps(serialize.graph_to_json(env)))
    else:
        out.write(serialize.graph_to_dot(env))
    return OK


def library_stats(env: LibraryEnv) -> dict:
    macros: Counter = Counter()
    for definition in env.definitions.values():
        for d in getattr(definition.expr, "decls", ()):
            if isinstance(d, AxiomDecl):
                macros.update(macro_uses(d.body))
    return {
        "theories": len(env.theories),
        "arrows": len(env.arrows),
        "axioms": sum(len(p.axioms) for p in env.theories.values()),
        "obligations": len(env.obligations),
        "macro_uses": dict(sorted(macros.items())),
    }


def cmd_stats(args, out, err) -> int:
    stats = library_stats(_load(args.files))
    for key in ("theories", "arrows", "axioms", "obligations"):
        out.write(f"{key}: {stats[key]}\n")
    out.write("macro uses:\n")
    for name, count in stats["macro_uses"].items():
        out.write(f"  {name}: {count}\n")
    return OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="theoria", description="Elaborate and inspect theory libraries.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="parse, elaborate and sort-check")
    p.add_argument("files", nargs="+")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("expand", help="print the flattened presentation")
    p.add_argument("files", nargs="+")
    p.add_argument("name")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--full", action="store_true",
                   help="show generated types in full")
    p.set_defaults(run=cmd_expand)

    p = sub.add_parser("gen", help="run a generator on a theory")
    p.add_argument("kind", choices=("record", "terms", "hom", "sub"))
    p.add_argument("files", nargs="+")
    p.add_argument("name")
    p.add_argument("--full", action="store_true")
    p.set_defaults(run=cmd_gen)

    p = sub.add_parser("graph", help="export the morphism graph")
    p.add_argument("files", nargs="+")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.set_defaults(run=cmd_graph)

    p = sub.add_parser("stats", help="summarise a library")
    p.add_argument("files", nargs="+")
    p.set_defaults(run=cmd_stats)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.run(args, out, err)
    except _IOFailure as exc:
        print(f"theoria: {exc}", file=err)
        return IO_ERROR
    except TheoriaError as exc:
        _report(exc, err)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
