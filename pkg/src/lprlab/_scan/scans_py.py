"""NumPy implementations of the exhaustive window scans.

Every contiguous periodic window of every length 1..N is visited, so these
are exact (no dyadic shortcuts).  The compiled twin in ``_scans_cy`` computes
the same quantities with better asymptotics for the real-valued oscillation
scan; this module is the import-time fallback and the reference for the
cross-implementation tests.
"""

import math

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.ndimage import maximum_filter1d

__all__ = ["maximal_mean_scan", "sharp_scan_real", "sharp_scan_norm"]

_BLOCK_ELEMENTS = 1 << 22


def _trailing_max(a: np.ndarray, width: int) -> np.ndarray:
    """out[t] = max over s in [t-width+1, t] (mod N) of a[s]."""
    return maximum_filter1d(a, size=width, mode="wrap", origin=(width - 1) // 2)


def maximal_mean_scan(g: np.ndarray) -> np.ndarray:
    """out[t] = max over periodic windows containing t of the window mean.

    ``g`` must be real and nonnegative (callers feed |f|^q).
    """
    g = np.asarray(g, dtype=float)
    n = g.shape[0]
    prefix = np.concatenate([[0.0], np.cumsum(np.concatenate([g, g]))])
    starts = np.arange(n)
    out = np.full(n, -np.inf)
    for ell in range(1, n + 1):
        means = (prefix[starts + ell] - prefix[starts]) / ell
        np.maximum(out, _trailing_max(means, ell), out=out)
    return out


def sharp_scan_real(g: np.ndarray) -> np.ndarray:
    """Mean-oscillation maximum for a real signal (modulus = |.|)."""
    return sharp_scan_norm(np.asarray(g, dtype=np.complex128)[:, None], 2.0)


def sharp_scan_norm(values: np.ndarray, r: float) -> np.ndarray:
    """out[t] = max over windows W containing t of
    mean_{i in W} || v_i - mean_W(v) ||_{l^r}, for N x d complex values."""
    v = np.asarray(values, dtype=np.complex128)
    if v.ndim == 1:
        v = v[:, None]
    n, d = v.shape
    v2 = np.concatenate([v, v], axis=0)
    out = np.zeros(n)
    block = max(1, _BLOCK_ELEMENTS // max(1, d))
    for ell in range(1, n + 1):
        osc = np.empty(n)
        step = max(1, block // ell)
        for s0 in range(0, n, step):
            s1 = min(n, s0 + step)
            w = sliding_window_view(v2[s0 : s1 + ell - 1], ell, axis=0)  # (s1-s0, d, ell)
            means = w.mean(axis=2)
            dev = np.abs(w - means[:, :, None])
            if math.isinf(r):
                norms = dev.max(axis=1)
            elif r == 1:
                norms = dev.sum(axis=1)
            elif r == 2:
                norms = np.sqrt((dev * dev).sum(axis=1))
            else:
                norms = (dev**r).sum(axis=1) ** (1.0 / r)
            osc[s0:s1] = norms.mean(axis=1)
        np.maximum(out, _trailing_max(osc, ell), out=out)
    return out
