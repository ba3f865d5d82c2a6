"""Exception hierarchy.

Each class carries the process exit code the CLI reports for it.
"""


class ArfkitError(Exception):
    exit_code = 3


class InputError(ArfkitError, ValueError):
    """Malformed or out-of-domain input."""

    exit_code = 1


class FieldMismatchError(InputError):
    pass


class PrecisionError(ArfkitError):
    """The chosen truncation is too small to decide the answer."""

    exit_code = 2


class ResolutionError(PrecisionError):
    """Blow-ups did not reach a smooth point within the step budget."""

    def __init__(self, message, partial=()):
        super().__init__(message)
        self.partial = tuple(partial)


class InconsistencyError(ArfkitError):
    """Two independent routes disagreed; indicates a bug, not bad input."""

    exit_code = 3
