"""Shared exception types."""


class ResourceLimitError(RuntimeError):
    """A hard resource limit was exceeded (enumeration cap, frontier cap)."""
