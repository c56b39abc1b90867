"""Pick the compiled kernels when importable, else the numpy fallback.

Set ``RINGCAV_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

compiled = None
if os.environ.get("RINGCAV_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _kernels as compiled
    except ImportError:
        compiled = None

kernels = compiled if compiled is not None else _pykernels
NAME = "cython" if compiled is not None else "python"
