"""Backend selection for the hot kernels.

The compiled extension is used when it imports; set ``FROBSPLIT_PURE_PYTHON=1``
to force the reference implementation.
"""
import os

from . import _pykernels

if os.environ.get("FROBSPLIT_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.BACKEND
order_key = _impl.order_key
mul = _impl.mul
axpy = _impl.axpy
reduce = _impl.reduce
cartier = _impl.cartier


def backends():
    """Available kernel modules keyed by name."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels

        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
