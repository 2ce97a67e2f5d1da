"""barloop: exact integer arithmetic for simplicial nerves, bar and cobar
constructions, derived localization of rings, and Kan loop groups.

Everything is computed over the integers with arbitrary precision; no
floating point is used anywhere.  Results that depend on a truncation
window, a rewriting budget, or an enumeration cap say so explicitly
instead of guessing.
"""

__version__ = "0.1.0"

from . import errors

__all__ = ["errors", "__version__"]
