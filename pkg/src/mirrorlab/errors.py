"""Exception types shared across the package."""


class MirrorLabError(Exception):
    """Base class for all package errors."""


class ConfigurationError(MirrorLabError):
    """A parameter or config file is out of range or malformed."""


class CouplingInvariantError(MirrorLabError):
    """The coupling case analysis reached a state it never should.

    Raised e.g. when the matching transform of coupling rule (4) is called
    with a matching outside its admissible set.  Signals a caller bug,
    not bad user input.
    """


class InternalInvariantError(MirrorLabError):
    """A structural invariant of a data structure was violated."""


class UsageError(MirrorLabError):
    """An operation was called with incompatible arguments."""
