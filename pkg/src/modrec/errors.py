"""Exception hierarchy shared across the package.

Two failure classes are kept apart deliberately: bad input versus a broken
mathematical identity.  The CLI maps them to distinct exit codes (1 and 2)
so that automation can tell "you gave me garbage" from "the mathematics
disagrees with itself", which is the whole point of the cross-checks.
"""


class ModrecError(Exception):
    """Base class for all package errors."""


class ValidationError(ModrecError):
    """Invalid input, unmet precondition, or malformed configuration."""


class InvariantViolation(ModrecError):
    """A mathematical identity or structural invariant failed.

    Raising this signals a bug (or a falsified configuration), never a
    user mistake.
    """
