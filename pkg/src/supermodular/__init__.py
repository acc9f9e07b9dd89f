"""Exact tools for super-modular fusion rings, their fermionic quotients and spin-modular extensions."""
from .errors import SupermodularError

__version__ = "0.1.0"
__all__ = ["SupermodularError", "__version__"]
