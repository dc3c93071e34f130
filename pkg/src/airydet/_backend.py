"""Select the kernel implementation at import time.

``AIRYDET_BACKEND=python`` forces the numpy fallback even when the compiled
extension is available.
"""

from __future__ import annotations

import os

from . import _pykernels

pure = _pykernels

if os.environ.get("AIRYDET_BACKEND", "").lower() == "python":
    impl = _pykernels
    compiled = None
else:
    try:
        from . import _ckernels as compiled
    except ImportError:  # extension not built
        compiled = None
    impl = compiled if compiled is not None else _pykernels

NAME = "cython" if impl is not _pykernels else "python"
