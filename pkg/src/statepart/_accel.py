"""Optional numba acceleration for the hot numeric kernels.

The LP simplex kernel is written once, in a numba-compatible style, and
compiled with ``numba.njit`` when numba is importable.  Setting the
environment variable ``STATEPART_JIT=0`` (also accepted: ``false``, ``off``,
``no``) before import forces the plain numpy path; the same source runs in
both modes, so results are bit-identical either way.
"""

from __future__ import annotations

import os

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

NUMBA_AVAILABLE = numba is not None


def _env_flag(name: str, default: bool) -> bool:
    raw = os.environ.get(name)
    if raw is None:
        return default
    return raw.strip().lower() not in {"0", "false", "off", "no"}


JIT_ENABLED = NUMBA_AVAILABLE and _env_flag("STATEPART_JIT", True)


def jit_compile(func):
    """Return the numba-compiled version of ``func`` (numba must be present)."""
    return numba.njit(cache=True)(func)


def select_kernel(plain, jitted):
    """Pick the active kernel implementation based on the STATEPART_JIT flag."""
    if JIT_ENABLED and jitted is not None:
        return jitted
    return plain
