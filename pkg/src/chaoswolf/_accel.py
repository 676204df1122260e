"""Backend selection for the hot kernels.

Numba is used when it imports cleanly and ``CHAOSWOLF_DISABLE_NUMBA`` is unset
(or set to ``0``). Otherwise every kernel runs on its numpy / pure-Python path.
"""
import os

_DISABLED = os.environ.get("CHAOSWOLF_DISABLE_NUMBA", "0").strip().lower() not in ("", "0", "false", "no")

try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and not _DISABLED


def njit(func):
    """Compile ``func`` with numba in nopython mode when numba is importable.

    Compilation happens regardless of the env flag so the benchmark script and
    the cross-backend tests can reach both versions; the flag only decides
    which version the public dispatchers hand out.
    """
    if not HAS_NUMBA:
        return func
    return numba.njit(cache=True)(func)


def backend():
    return "numba" if USE_NUMBA else "numpy"
