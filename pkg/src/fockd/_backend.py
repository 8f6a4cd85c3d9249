"""Kernel backend selection.

Hot loops in :mod:`fockd.kernels` exist twice: a numba ``@njit`` version and a
vectorized numpy version. The numba path is used when numba imports and the
environment variable ``FOCKD_DISABLE_NUMBA`` is unset (or ``0``).
"""

import os
from contextlib import contextmanager


def _noop_jit(*args, **kwargs):
    """Stand-in for ``numba.njit`` that returns the function unchanged."""
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def wrap(f):
        return f

    return wrap


try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = _noop_jit
    HAVE_NUMBA = False


def _env_disabled() -> bool:
    return os.environ.get("FOCKD_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")


_state = {"backend": "numba" if HAVE_NUMBA and not _env_disabled() else "numpy"}


def backend() -> str:
    """Name of the active kernel backend, ``"numba"`` or ``"numpy"``."""
    return _state["backend"]


def set_backend(name: str) -> None:
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not importable")
    _state["backend"] = name


@contextmanager
def use_backend(name: str):
    """Temporarily switch the kernel backend (used by tests and benchmarks)."""
    old = backend()
    set_backend(name)
    try:
        yield
    finally:
        _state["backend"] = old
