"""Hot kernels: cut weight, move-based refinement, exhaustive search.

A compiled extension is tried first; the pure-Python twin keeps identical
semantics and is selected automatically when the extension is unavailable
(or when HYPERSHARD_FORCE_PURE is set). Both operate on int64 arrays in
compressed edge-list form: eptr[e]..eptr[e+1] indexes eind, the vertex ids
of hyperedge e.
"""

import os

if os.environ.get("HYPERSHARD_FORCE_PURE"):
    from . import _kernels_py as _impl

    BACKEND = "pure-python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "pure-python"

cut_weight = _impl.cut_weight
refine = _impl.refine
brute_force = _impl.brute_force

__all__ = ["BACKEND", "cut_weight", "refine", "brute_force"]
