"""Exception and warning types shared across the package."""


class PreconditionError(ValueError):
    """A constructor or transform was called outside its domain.

    The message names the violated condition so the CLI can report it.
    """


class ReliabilityWarning(UserWarning):
    """A result was computed outside the range where truncation or
    quadrature error is controlled. The value is returned, but flagged."""


class SpecError(ValueError):
    """A spec or config document is malformed (unknown class, family or
    key, wrong shape)."""
