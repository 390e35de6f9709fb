"""Backend selection for the curve kernel.

The compiled extension is used when it imports; setting the environment
variable ``MPFSS_PURE_PYTHON=1`` forces the pure-Python implementation.
"""

import os

from ._pykernel import CurveCore as PyCurveCore

try:
    if os.environ.get("MPFSS_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python kernel requested")
    from ._ckernel import CurveCore
    BACKEND = "cython"
except ImportError:
    CurveCore = PyCurveCore
    BACKEND = "python"

__all__ = ["BACKEND", "CurveCore", "PyCurveCore"]
