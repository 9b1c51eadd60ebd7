"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ATSPKIT_PURE=1 to force the fallback (used by the parity tests and the
kernel benchmark).
"""

import os

from .fallback import FORBID

if os.environ.get("ATSPKIT_PURE") == "1":
    from . import fallback as _impl
    IMPLEMENTATION = "python"
else:
    try:
        from . import _core as _impl
        IMPLEMENTATION = "compiled"
    except ImportError:
        from . import fallback as _impl
        IMPLEMENTATION = "python"

lap_solve = _impl.lap_solve
scan_best_move = _impl.scan_best_move
brute_force_search = _impl.brute_force_search

__all__ = ["FORBID", "IMPLEMENTATION", "lap_solve", "scan_best_move",
           "brute_force_search"]
