"""Pick the compiled kernels when available, else the pure-Python ones.

Set ``QUIVGRASS_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("QUIVGRASS_PURE_PYTHON"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels

BACKEND = kernels.BACKEND
