"""Shared numeric helpers."""

from __future__ import annotations

import numpy as np

__all__ = ["OutOfRangeError", "comp_sum"]

_CHUNK = 1024


class OutOfRangeError(ValueError):
    """An evaluation left the representable range (overflow, empty bracket)."""


def comp_sum(values) -> float:
    """Deterministic compensated sum of a 1-d array.

    Fixed partition into 1024-element chunks, numpy pairwise sum per chunk,
    Neumaier combination of the chunk partials in index order.  The result is
    reproducible run to run and independent of any thread count because the
    partition and combination order never change.
    """
    arr = np.ascontiguousarray(np.asarray(values, dtype=np.float64).ravel())
    if arr.size == 0:
        return 0.0
    partials = [float(np.sum(arr[i:i + _CHUNK])) for i in range(0, arr.size, _CHUNK)]
    total = 0.0
    comp = 0.0
    for p in partials:
        t = total + p
        if abs(total) >= abs(p):
            comp += (total - t) + p
        else:
            comp += (p - t) + total
        total = t
    return total + comp


