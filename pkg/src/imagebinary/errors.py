"""Exception hierarchy shared by the whole package.

Each class maps to one kind of failure so the command line tool can pick
exit codes without string matching.
"""


class AutomataError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(AutomataError):
    """Malformed input text (file syntax, bad scalar literal)."""

    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


class ValidationError(AutomataError):
    """Structurally well-formed input that violates a declared invariant."""


class InputError(AutomataError):
    """An operation was called with arguments outside its contract."""


class SemanticError(AutomataError):
    """Input fails a semantic requirement (e.g. a weighted automaton whose
    image is not contained in {0,1} was passed where an image-binary one is
    required)."""


class InternalInvariantError(AutomataError):
    """A property the algorithms guarantee was observed to fail; indicates a
    bug or corrupted input rather than a user mistake."""
