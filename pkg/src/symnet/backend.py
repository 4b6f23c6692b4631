"""Selects the training-loop backend at import time.

The compiled Cython kernel is preferred; the numpy implementation is the
fallback.  Set SYMNET_BACKEND=python or SYMNET_BACKEND=cython to force a
choice (the latter raises if the extension is not built).
"""

import os

_forced = os.environ.get("SYMNET_BACKEND", "").strip().lower()

if _forced == "python":
    from . import _kernels_py as _impl
    BACKEND = "python"
elif _forced == "cython":
    from . import _kernels as _impl  # noqa: F401  (ImportError is the message)
    BACKEND = "cython"
elif _forced:
    raise ValueError(f"SYMNET_BACKEND must be 'python' or 'cython', got {_forced!r}")
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl
        BACKEND = "python"

train_loop = _impl.train_loop
DIVERGENCE_LIMIT = _impl.DIVERGENCE_LIMIT
KIND_IDENTITY = _impl.KIND_IDENTITY
KIND_TANH = _impl.KIND_TANH
KIND_SIGMOID = _impl.KIND_SIGMOID
OPT_SGD = _impl.OPT_SGD
OPT_ADAM = _impl.OPT_ADAM
