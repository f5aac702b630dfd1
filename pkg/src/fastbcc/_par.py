"""Worker-pool plumbing shared by the compiled kernels.

Two rules keep every algorithm's output independent of the worker count:

* parallel loops iterate over a fixed grid of ``CHUNKS`` contiguous chunks,
  never over the live thread count, so array partitioning is identical no
  matter how many workers execute it;
* kernels only ever race on idempotent single-word stores (duplicate
  suppression flags), which add redundant work but cannot change results.
"""

import os
import warnings
from contextlib import contextmanager

# numba caps set_num_threads() at NUMBA_NUM_THREADS, which defaults to the
# core count.  Raise the default so the 2-worker determinism checks can run
# even on a single-core box; an explicit user setting always wins.
if "NUMBA_NUM_THREADS" not in os.environ:
    os.environ["NUMBA_NUM_THREADS"] = str(max(os.cpu_count() or 1, 2))

with warnings.catch_warnings():
    # the TBB-version probe warns on some systems; the omp/workqueue layers
    # that actually get selected are fine
    warnings.simplefilter("ignore")
    import numba

warnings.filterwarnings(
    "ignore", message=".*TBB threading layer.*", category=Warning
)

from numba import njit, prange  # noqa: E402  (re-exported for the kernels)

#: fixed grain count for prange loops (see module docstring)
CHUNKS = 128

#: environment variable consulted by ``resolve_threads("auto")``
THREADS_ENV = "FASTBCC_THREADS"


def hardware_threads() -> int:
    """Number of hardware threads on this machine."""
    return os.cpu_count() or 1


def max_workers() -> int:
    """Largest worker count ``set_workers`` accepts in this process."""
    return int(numba.config.NUMBA_NUM_THREADS)


def resolve_threads(threads) -> int:
    """Map a ``threads`` argument (int, numeric string, or "auto") to a count.

    "auto" means all hardware threads, unless the FASTBCC_THREADS environment
    variable overrides it.  The result is clamped to ``max_workers()``.
    """
    if threads is None or threads == "auto":
        env = os.environ.get(THREADS_ENV)
        t = int(env) if env else hardware_threads()
    else:
        t = int(threads)
    if t < 1:
        raise ValueError(f"thread count must be >= 1, got {t}")
    return min(t, max_workers())


def set_workers(t: int) -> None:
    numba.set_num_threads(t)


def get_workers() -> int:
    return numba.get_num_threads()


@contextmanager
def workers(t):
    """Temporarily set the worker count (no-op when ``t`` is None)."""
    if t is None:
        yield
        return
    prev = numba.get_num_threads()
    numba.set_num_threads(resolve_threads(t))
    try:
        yield
    finally:
        numba.set_num_threads(prev)


__all__ = [
    "CHUNKS",
    "THREADS_ENV",
    "njit",
    "prange",
    "numba",
    "hardware_threads",
    "max_workers",
    "resolve_threads",
    "set_workers",
    "get_workers",
    "workers",
]
