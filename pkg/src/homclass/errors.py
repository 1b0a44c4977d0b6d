"""Exception hierarchy shared by every module.

The CLI maps these classes onto exit codes, so each one corresponds to a
distinct failure category rather than to a call site.
"""


class HomclassError(Exception):
    """Base class for all library errors."""

    exit_code = 5


class ParseError(HomclassError):
    """Malformed input text (structure files, formula files, decompositions)."""

    exit_code = 2

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class StructureError(HomclassError):
    """A structure, vocabulary or witness violates a semantic precondition."""

    exit_code = 3


class VocabularyMismatch(StructureError):
    pass


class PreconditionError(StructureError):
    """An operation was called outside its documented domain."""


class SizeBoundExceeded(HomclassError):
    """Input exceeds the configured exact-search bound."""

    exit_code = 4


class InvariantFailure(HomclassError):
    """An internal consistency check failed; indicates a bug."""

    exit_code = 5
