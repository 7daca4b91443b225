from typing import Optional


class NominalError(ValueError):
    """Base class for every error raised by nomsupport"""


class DegenerateTripleError(NominalError):
    """Conjugation split requested for atoms that are not pairwise distinct"""


class InvalidPermutationError(NominalError):
    """A mapping that does not extend to a finite permutation of the atoms"""


class ShapeMismatchError(NominalError):
    """Two values (or a value and a family) built from different constructions"""


class PreconditionError(NominalError):
    """An operation was called outside its documented precondition"""


class UniverseTooLargeError(PreconditionError):
    pass


class UnsupportedFamilyError(NominalError):
    """No constructive support function exists for the requested family"""


class UnknownOracleError(NominalError):
    pass


class ConfigurationError(NominalError):
    pass


class ParseError(NominalError):
    """Text that does not match one of the grammars; carries the failing column"""

    def __init__(self, message: str, text: str = "", position: Optional[int] = None):
        self.message = message
        self.text = text
        self.position = position
        super().__init__(self.render())

    def render(self) -> str:
        if self.position is None:
            return self.message
        caret = " " * self.position + "^"
        return f"{self.message} at column {self.position}\n  {self.text}\n  {caret}"


class UsageError(NominalError):
    """Command-line arguments that do not form a command"""
