"""Float kernels, compiled when available.

Set ``NDORTHO_PURE_PYTHON=1`` to force the pure-Python implementation.
``IMPLEMENTATION`` names the one in use.
"""

import os

from . import _pykernels

if os.environ.get("NDORTHO_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

IMPLEMENTATION = "cython" if _impl is not _pykernels else "python"

pnorm = _impl.pnorm
residual = _impl.residual
line_min = _impl.line_min
descend = _impl.descend

__all__ = ["IMPLEMENTATION", "pnorm", "residual", "line_min", "descend"]
