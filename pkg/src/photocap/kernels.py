"""Backend selection for the step loops.

The compiled extension is used when it imports; set
``PHOTOCAP_PURE_PYTHON=1`` to force the numpy fallback.
"""

import os

from . import _pykernels

if os.environ.get("PHOTOCAP_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

single_run = _impl.single_run
twin_run = _impl.twin_run

__all__ = ["BACKEND", "single_run", "twin_run"]
