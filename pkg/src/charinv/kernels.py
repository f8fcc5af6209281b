"""Kernel selection: the compiled extension when available, numpy otherwise.

Set ``CHARINV_PURE_PYTHON=1`` to force the numpy kernels.
"""
import os

from . import _kernels_py

BACKEND = "python"
sift_indices = _kernels_py.sift_indices
orbit_labels = _kernels_py.orbit_labels

if os.environ.get("CHARINV_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        BACKEND = "compiled"
        sift_indices = _compiled.sift_indices
        orbit_labels = _compiled.orbit_labels

__all__ = ["BACKEND", "sift_indices", "orbit_labels"]
