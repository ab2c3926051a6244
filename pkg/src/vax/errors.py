"""Exception hierarchy shared across the package.

InputError maps to CLI exit code 2, ConsistencyError to exit code 3.
"""


class VaxError(Exception):
    """Base class for all errors raised by this package."""


class InputError(VaxError):
    """Bad user input: unreadable files, malformed parameters, unknown ids."""


class ConsistencyError(VaxError):
    """Internal invariant violation; indicates a bug, not a user mistake."""
