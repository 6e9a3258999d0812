"""Exception hierarchy.

All errors carry an optional source position and, once they pass through
the elaborator, the name of the definition being evaluated.
"""

from __future__ import annotations


class TheoriaError(Exception):
    def __init__(self, message: str, pos=None, definition: str | None = None):
        super().__init__(message)
        self.message = message
        self.pos = pos
        self.definition = definition

    def __str__(self) -> str:
        prefix = f"in {self.definition}: " if self.definition else ""
        return f"{prefix}{self.message}"


# lexing / parsing
class LexError(TheoriaError):
    pass


class ParseError(TheoriaError):
    def __init__(self, message, pos=None, expected=(), definition=None):
        if expected:
            message = f"{message} (expected {', '.join(sorted(expected))})"
        super().__init__(message, pos, definition)
        self.expected = frozenset(expected)


class ForwardReference(ParseError):
    def __init__(self, name: str, pos=None):
        super().__init__(f"reference to undefined theory {name!r}", pos)
        self.name = name


# renamings and arrows
class InvalidRenaming(TheoriaError):
    pass


class CaptureError(TheoriaError):
    pass


class BrokenArrow(TheoriaError):
    pass


# elaboration
class DuplicateName(TheoriaError):
    pass


class UnresolvedSymbol(TheoriaError):
    pass


class UnknownTheory(TheoriaError):
    pass


class NoMorphism(TheoriaError):
    pass


class AmbiguousMorphism(TheoriaError):
    pass


class NameClash(TheoriaError):
    pass


class UnknownMacro(TheoriaError):
    pass


class ArityMismatch(TheoriaError):
    pass


class NonOperationArgument(TheoriaError):
    pass


# sort checking
class SortMismatch(TheoriaError):
    def __init__(self, expected, found, pos=None, message=None):
        from theoria.printer import show_type

        if message is None:
            message = (f"sort mismatch: expected {show_type(expected)}, "
                       f"found {show_type(found)}")
        super().__init__(message, pos)
        self.expected = expected
        self.found = found


class UnknownName(TheoriaError):
    pass


# generators
class UnsupportedDeclaration(TheoriaError):
    pass


class NotSingleSorted(TheoriaError):
    pass


class ForeignSort(TheoriaError):
    pass
