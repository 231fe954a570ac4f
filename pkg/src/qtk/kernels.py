"""Backend selection for the row-reduction hot path.

The compiled extension qtk._bareiss is preferred; the pure-Python module
qtk._bareiss_py is the drop-in fallback.  Set QTK_KERNEL=py or QTK_KERNEL=c
to force one side (used by the test suite and by benchmarks/bench_kernels.py).
"""

from __future__ import annotations

import os

_forced = os.environ.get("QTK_KERNEL", "").strip().lower()

if _forced in ("py", "python"):
    from . import _bareiss_py as _impl

    BACKEND = "python"
elif _forced in ("c", "cython"):
    from . import _bareiss as _impl  # type: ignore[no-redef]

    BACKEND = "cython"
else:
    try:
        from . import _bareiss as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        from . import _bareiss_py as _impl

        BACKEND = "python"

echelon_int = _impl.echelon_int
