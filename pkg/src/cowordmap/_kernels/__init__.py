"""Pair-counting kernel with a compiled fast path.

The Cython extension is used when it was built; set ``COWORDMAP_PURE_PYTHON=1``
to force the pure-Python fallback. Both implementations are interchangeable
(see tests/test_kernels.py).
"""

import os

from ._pairs_py import count_pairs as _count_pairs_py

if os.environ.get("COWORDMAP_PURE_PYTHON"):
    count_pairs = _count_pairs_py
    BACKEND = "python"
else:
    try:
        from ._pairs_cy import count_pairs  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        count_pairs = _count_pairs_py
        BACKEND = "python"

__all__ = ["BACKEND", "count_pairs"]
