"""Pick the compiled kernels when importable, else the pure-Python ones.

Set ``QUILDEG_PURE=1`` to force the fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
count_standard = _kernels_py.count_standard
rank_mod_p = _kernels_py.rank_mod_p

if not os.environ.get("QUILDEG_PURE"):
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        count_standard = _kernels.count_standard
        rank_mod_p = _kernels.rank_mod_p
        BACKEND = "cython"
