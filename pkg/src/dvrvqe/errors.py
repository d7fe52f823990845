"""Shared exception types.

Plain ValueError is used for invalid arguments throughout; these classes
cover the remaining failure modes that callers may want to catch separately.
"""


class ResourceLimitError(RuntimeError):
    """Requested problem size would exceed what dense linear algebra supports."""


class InvariantViolationError(RuntimeError):
    """An internal consistency check (e.g. band-profile reconstruction) failed."""
