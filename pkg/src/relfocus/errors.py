"""Exception hierarchy shared by the library and the command line tool."""


class RelfocusError(Exception):
    """Base class for all errors raised by this package."""


class InputError(RelfocusError):
    """Malformed user input: CSV files, partition text, generator specs."""


class GuardError(RelfocusError):
    """A size guard refused to run an exhaustive computation."""


class InternalInvariantError(RelfocusError):
    """A structural theorem the implementation relies on was violated.

    Seeing this exception means a bug in the package, not bad input.
    """
