"""Exception hierarchy shared by the library and the CLI.

The CLI maps :class:`~endopres.presfmt.ParseError` to exit code 2 and every
:class:`PreconditionError` to exit code 3.
"""


class PreconditionError(ValueError):
    """An input is well formed but violates an operation's precondition."""


class AlphabetError(PreconditionError):
    """A word uses a generator outside the expected alphabet."""


class NotAscendingError(PreconditionError):
    pass


class DegreeError(PreconditionError):
    """The degree map is missing or does not kill every relator."""


class CertificateError(PreconditionError):
    pass


class WindowError(PreconditionError):
    """The chosen window bound is smaller than the rewritten relators need."""

    def __init__(self, message: str, n_min: int):
        super().__init__(message)
        self.n_min = n_min
