"""Shared exception types."""


class ResourceLimitError(RuntimeError):
    """An enumeration would exceed its cell or memory budget."""
