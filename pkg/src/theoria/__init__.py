"""Compiler and library manager for theory presentations."""

from theoria.core import (
    IDENTITY, Arrow, ProofObligation, Renaming, alpha_equal, apply_renaming,
    compose_renamings, equivalent, symbols_of, validate_arrow,
)
from theoria.elaborator import (
    LibraryEnv, elaborate_files, elaborate_library, elaborate_text,
    eval_combine, eval_extend, eval_instance, infer_arrow,
)
from theoria.errors import TheoriaError
from theoria.generators import (
    gen_homomorphism, gen_record_type, gen_substructure, gen_term_algebra,
    traverse_theory,
)
from theoria.parser import parse_formula, parse_library
from theoria.printer import pretty_print
from theoria.syntax import TheoryPresentation
from theoria.typecheck import check_theory

__version__ = "0.1.0"

__all__ = [
    "IDENTITY", "Arrow", "LibraryEnv", "ProofObligation", "Renaming",
    "TheoriaError", "TheoryPresentation", "alpha_equal", "apply_renaming",
    "check_theory", "compose_renamings", "elaborate_files",
    "elaborate_library", "elaborate_text", "equivalent", "eval_combine",
    "eval_extend", "eval_instance", "gen_homomorphism", "gen_record_type",
    "gen_substructure", "gen_term_algebra", "infer_arrow", "parse_formula",
    "parse_library", "pretty_print", "symbols_of", "traverse_theory",
    "validate_arrow",
]
