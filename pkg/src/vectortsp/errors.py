"""Exception types shared across the package.

The CLI maps these onto distinct exit codes, so solver code should raise
the most specific one that applies.
"""


class VectorTspError(Exception):
    """Base class for all package errors."""


class InvalidInputError(VectorTspError):
    """Malformed argument: bad instance data, bad indices, bad file content."""


class GuardError(VectorTspError):
    """Refused because the input exceeds a size guard for an exact method."""


class TrajectoryNotFound(VectorTspError):
    """The search space was exhausted without reaching the goal."""
