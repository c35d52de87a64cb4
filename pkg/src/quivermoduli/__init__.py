"""Exact counting invariants of quiver moduli spaces."""
from .quiver import Quiver, QuiverError, parse_builtin, standard_quiver

__version__ = "0.1.0"

__all__ = ["Quiver", "QuiverError", "parse_builtin", "standard_quiver", "__version__"]
