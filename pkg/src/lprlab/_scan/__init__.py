"""Window-scan kernels with a compiled core and a NumPy fallback.

Importing this package selects the compiled Cython kernels when the extension
was built, unless ``LPRLAB_PURE_PYTHON`` is set in the environment; otherwise
the NumPy implementations take over with identical semantics.  ``IMPL``
records which one is active.
"""

import os

import numpy as np

from . import scans_py

__all__ = ["IMPL", "maximal_mean_scan", "sharp_scan_real", "sharp_scan_norm"]

_cy = None
if not os.environ.get("LPRLAB_PURE_PYTHON"):
    try:
        from . import _scans_cy as _cy
    except ImportError:
        _cy = None

IMPL = "compiled" if _cy is not None else "python"


def maximal_mean_scan(g):
    g = np.ascontiguousarray(g, dtype=np.float64)
    if _cy is not None:
        return _cy.maximal_mean_scan(g)
    return scans_py.maximal_mean_scan(g)


def sharp_scan_real(g):
    g = np.ascontiguousarray(g, dtype=np.float64)
    if _cy is not None:
        return _cy.sharp_scan_real(g)
    return scans_py.sharp_scan_real(g)


def sharp_scan_norm(values, r):
    values = np.asarray(values, dtype=np.complex128)
    if values.ndim == 1:
        values = values[:, None]
    if _cy is not None:
        stacked = np.ascontiguousarray(
            np.stack([values.real, values.imag], axis=-1), dtype=np.float64
        )
        return _cy.sharp_scan_norm(stacked, float(r))
    return scans_py.sharp_scan_norm(values, float(r))
