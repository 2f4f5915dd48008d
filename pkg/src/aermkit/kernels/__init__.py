"""Hot numeric kernels with a compiled core and a NumPy fallback.

The Cython extension ``aermkit.kernels._core`` is preferred when it was
built; otherwise the NumPy reference implementation ``_ref`` is used.  Set
``AERM_KERNELS=python`` to force the fallback (useful for benchmarking).
"""

import os

from . import _ref

if os.environ.get("AERM_KERNELS", "").lower() == "python":
    _impl = _ref
    BACKEND = "python"
else:
    try:
        from . import _core as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _ref
        BACKEND = "python"

l1_project = _impl.l1_project
l1_quadratic_min = _impl.l1_quadratic_min
pinball_risk = _impl.pinball_risk
binom_window_coverage = _impl.binom_window_coverage

__all__ = [
    "BACKEND",
    "l1_project",
    "l1_quadratic_min",
    "pinball_risk",
    "binom_window_coverage",
]
