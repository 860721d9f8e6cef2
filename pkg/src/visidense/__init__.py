"""Exact visible-element densities in free-abelian, free and surface groups."""

from .errors import ResourceLimitError
from .numtheory import INFINITY

__version__ = "0.1.0"

__all__ = ["INFINITY", "ResourceLimitError", "__version__"]
