"""Select the refinement kernel: compiled if importable, pure Python otherwise.

Set ``HAARREP_KERNEL=python`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _refine_py

if os.environ.get("HAARREP_KERNEL", "").lower() == "python":
    kernel = _refine_py
else:
    try:
        from . import _refine as kernel  # type: ignore[no-redef]
    except ImportError:
        kernel = _refine_py

BACKEND = kernel.BACKEND
PartitionState = kernel.PartitionState
graph_arrays = kernel.graph_arrays
is_automorphism = kernel.is_automorphism
