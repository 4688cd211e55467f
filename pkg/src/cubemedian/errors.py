"""Exception types shared across the package.

The CLI maps these onto exit codes: InputError -> 1, ResourceError -> 2.
"""


class InputError(ValueError):
    """Malformed or out-of-contract input."""


class ResourceError(RuntimeError):
    """A configured search budget ran out before the computation finished.

    ``partial`` carries whatever was computed before giving up.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class StructuralError(RuntimeError):
    """The data contradicts a structural assumption (e.g. host is not median).

    ``witness`` holds the offending vertices / relators / triple.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class Inconclusive(RuntimeError):
    """The window is too small to decide the question either way."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
