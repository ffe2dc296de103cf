"""Backend selection for the compiled kernels.

Set ``CHERNPOS_DISABLE_NUMBA=1`` to force the pure-numpy path.  When numba
is not importable the numpy path is used regardless.
"""

import logging
import os

logger = logging.getLogger(__name__)

ENV_FLAG = "CHERNPOS_DISABLE_NUMBA"

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    HAVE_NUMBA = False
    logger.warning("numba not importable; kernels fall back to numpy")


def njit(*args, **kwargs):
    """numba.njit when available, otherwise the identity decorator."""
    if HAVE_NUMBA:
        return numba.njit(*args, **kwargs)

    def wrap(func):
        return func

    if args and callable(args[0]):
        return args[0]
    return wrap


def default_backend() -> str:
    flag = os.environ.get(ENV_FLAG, "").strip().lower()
    if not HAVE_NUMBA or flag in ("1", "true", "yes", "on"):
        return "numpy"
    return "numba"


def resolve_backend(backend: str | None) -> str:
    backend = default_backend() if backend is None else backend
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not installed")
    return backend
