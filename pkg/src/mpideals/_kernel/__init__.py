"""Kernel backend selection.

The compiled kernel is preferred when its extension module imported cleanly;
setting the environment variable MPIDEALS_PURE (to any nonempty value) forces
the pure-Python twin.  Both expose the same two entry points, jacobi_eig and
matmul, with identical in-place semantics and bit-identical results.
"""

import os

if os.environ.get("MPIDEALS_PURE"):
    from .kernel_py import jacobi_eig, matmul

    BACKEND = "python"
else:
    try:
        from ._kernel_c import jacobi_eig, matmul

        BACKEND = "c"
    except ImportError:
        from .kernel_py import jacobi_eig, matmul

        BACKEND = "python"

__all__ = ["jacobi_eig", "matmul", "BACKEND"]
