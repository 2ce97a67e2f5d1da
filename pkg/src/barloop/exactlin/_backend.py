"""Kernel backend selection.

The compiled extension is preferred when present; setting the environment
variable ``BARLOOP_PURE=1`` forces the pure-Python kernel (useful for
benchmarking and for debugging the compiled twin).
"""

import os

if os.environ.get("BARLOOP_PURE"):
    from ._kernel_py import smith_kernel, xgcd

    BACKEND = "python"
else:
    try:
        from ._snfcore import smith_kernel, xgcd  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from ._kernel_py import smith_kernel, xgcd

        BACKEND = "python"

__all__ = ["smith_kernel", "xgcd", "BACKEND"]
