"""Pick the compiled kernels when importable, else the numpy fallback.

Set ``NORMCOMPRESS_PURE=1`` to force the fallback (used by the benchmark and
by the backend-parity tests).
"""
import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

if _compiled is not None and os.environ.get("NORMCOMPRESS_PURE") != "1":
    kernels = _compiled
    BACKEND = "cython"
else:
    kernels = _kernels_py
    BACKEND = "python"


def available():
    """Mapping of backend name to kernel module for every importable backend."""
    out = {"python": _kernels_py}
    if _compiled is not None:
        out["cython"] = _compiled
    return out
