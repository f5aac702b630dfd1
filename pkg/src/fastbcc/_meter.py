"""Word-granular accounting for transient array allocations.

Algorithms that advertise an auxiliary-space figure allocate their scratch
arrays through :func:`alloc` / :func:`zeros` / :func:`full`.  While a meter is
active (see :func:`measure`), every such request is charged in 8-byte words.
The charge is cumulative at this boundary: scratch buffers are allocated once
per run and reused, so the cumulative figure is a tight, exactly-reproducible
upper bound on peak live usage.  Allocations numba makes internally (loop
temporaries, reductions) sit below the boundary and are not counted.

Not thread-safe: one measured run at a time, which matches how the bench
driver uses it.
"""

import numpy as np

_active = None


class WordMeter:
    """Accumulates words (8-byte units) requested while active."""

    def __init__(self):
        self.words = 0

    def charge_array(self, arr: np.ndarray) -> None:
        self.words += (arr.nbytes + 7) // 8


class measure:
    """Context manager activating a fresh :class:`WordMeter`.

    Usage::

        with measure() as meter:
            run_something()
        print(meter.words)
    """

    def __enter__(self) -> WordMeter:
        global _active
        self._prev = _active
        self.meter = WordMeter()
        _active = self.meter
        return self.meter

    def __exit__(self, *exc):
        global _active
        _active = self._prev
        return False


def _charge(arr: np.ndarray) -> np.ndarray:
    if _active is not None:
        _active.charge_array(arr)
    return arr


def charge(arr: np.ndarray) -> np.ndarray:
    """Record an array that was created elsewhere (RNG output, stacking)."""
    return _charge(arr)


def alloc(shape, dtype) -> np.ndarray:
    """`np.empty` routed through the active meter (if any)."""
    return _charge(np.empty(shape, dtype=dtype))


def zeros(shape, dtype) -> np.ndarray:
    return _charge(np.zeros(shape, dtype=dtype))


def full(shape, fill, dtype) -> np.ndarray:
    return _charge(np.full(shape, fill, dtype=dtype))
