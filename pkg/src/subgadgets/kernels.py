"""Kernel dispatch: compiled fast path when available, pure Python otherwise.

The compiled kernels operate on int64 values, so `scan_submodularity` only
routes there when every scaled value has enough headroom for the 4-term
combination; larger values silently use the arbitrary-precision fallback.
Both backends implement identical semantics (see `_purecore`).
"""

from __future__ import annotations

from typing import Sequence

from . import _purecore

try:
    from . import _fastcore
except ImportError:  # extension not built
    _fastcore = None

BACKEND = _fastcore.BACKEND_NAME if _fastcore is not None else _purecore.BACKEND_NAME

# leaves 4x headroom for v[S] - v[S|i] - v[S|j] + v[S|ij]
_INT64_SAFE = 1 << 61


def scan_submodularity(values: Sequence[int], k: int) -> list[tuple[int, int, int, int]]:
    if _fastcore is not None and max(map(abs, values), default=0) < _INT64_SAFE:
        import numpy as np

        arr = np.asarray(values, dtype=np.int64)
        return _fastcore.scan_submodularity(arr, k)
    return _purecore.scan_submodularity(values, k)


def sorted_distance_rows(k: int, points: Sequence[int]) -> list[bytes]:
    if _fastcore is not None:
        return _fastcore.sorted_distance_rows(k, list(points))
    return _purecore.sorted_distance_rows(k, points)


def reduced_constraint_rows(orbit_ids: Sequence[int], k: int) -> list[tuple[int, int, int, int]]:
    if _fastcore is not None:
        import numpy as np

        arr = np.asarray(orbit_ids, dtype=np.int32)
        return _fastcore.reduced_constraint_rows(arr, k)
    return _purecore.reduced_constraint_rows(orbit_ids, k)
