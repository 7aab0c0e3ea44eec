"""Exception types shared across the package."""


class PrizelabError(Exception):
    """Base class for errors raised by this package."""


class ParameterError(PrizelabError, ValueError):
    """A value lies outside the documented domain of a parameter or input."""


class GameTerminatedError(PrizelabError, RuntimeError):
    """A mechanism cannot run with the given participant count."""


class UnsupportedMechanismError(PrizelabError, ValueError):
    """An operation defined only for top-k mechanisms received another kind."""
