"""Discrete Hardy-Littlewood maximal functions and the sharp function.

Windows are the contiguous periodic index ranges of every length 1..N, so
every grid point belongs to windows of every length and all suprema below are
exact maxima over that family (wrap-around matches the torus signal model).
M_q takes the q-power mean of |f| over the best window; the sharp function
takes the best mean oscillation; both reduce lattice-valued input either
coordinatewise or through the lattice norm, selected per operation.
"""

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from ._scan import maximal_mean_scan, sharp_scan_norm, sharp_scan_real
from .errors import PreconditionError
from .lattice import LatticeSignal, concavified_norm, mixed_norm, vector_norm
from .spectral import GridSignal

__all__ = [
    "windows",
    "mq_maximal",
    "sharp_function",
    "maximal_norm_report",
    "MaximalReport",
    "grid_pnorm",
]

SignalLike = Union[GridSignal, LatticeSignal, np.ndarray]


def windows(n: int):
    """All periodic windows as (start, length) pairs, lengths 1..n."""
    for length in range(1, n + 1):
        for start in range(n):
            yield start, length


def _values(f: SignalLike):
    if isinstance(f, GridSignal):
        return f.samples[:, None], f.period, None
    if isinstance(f, LatticeSignal):
        return f.values, f.period, f.spec
    arr = np.asarray(f, dtype=np.complex128)
    if arr.ndim == 1:
        arr = arr[:, None]
    return arr, None, None


def _wrap_scalar(out: np.ndarray, period):
    return GridSignal(out, period) if period is not None else out


def grid_pnorm(values, p: float) -> float:
    """(1/N sum |v|^p)^(1/p) for a scalar grid function; max for p = inf."""
    a = np.abs(np.asarray(values))
    if math.isinf(p):
        return float(a.max())
    return float(np.mean(a**p) ** (1.0 / p))


def mq_maximal(f: SignalLike, q: float, mode: str = "norm"):
    """q-power-mean maximal function over all periodic windows.

    ``mode="norm"`` applies the lattice norm first and returns a scalar
    signal; ``mode="coordinate"`` applies the scalar maximal function to the
    modulus of each coordinate separately and keeps the lattice shape.
    """
    if not (1 <= q < math.inf):
        raise PreconditionError("q must be finite and >= 1")
    vals, period, spec = _values(f)
    if mode == "norm":
        base = vector_norm(vals, spec.r, axis=1) if spec is not None else np.abs(vals[:, 0])
        out = maximal_mean_scan(base**q) ** (1.0 / q)
        return _wrap_scalar(out, period)
    if mode == "coordinate":
        cols = [maximal_mean_scan(np.abs(vals[:, w]) ** q) ** (1.0 / q) for w in range(vals.shape[1])]
        out = np.stack(cols, axis=1)
        if spec is not None:
            return LatticeSignal(out, period, spec)
        return _wrap_scalar(out[:, 0], period)
    raise PreconditionError(f"mode must be 'norm' or 'coordinate', got {mode!r}")


def sharp_function(f: SignalLike):
    """Best mean oscillation over windows: sup_W mean_W ||f - mean_W f||.

    Scalar input uses the modulus; lattice input uses its l^r norm.
    """
    vals, period, spec = _values(f)
    if spec is None and vals.shape[1] == 1 and np.all(vals.imag == 0):
        out = sharp_scan_real(vals[:, 0].real)
    else:
        out = sharp_scan_norm(vals, spec.r if spec is not None else 2.0)
    return _wrap_scalar(out, period)


@dataclass(frozen=True)
class MaximalReport:
    p: float
    q: float
    fs_ratio: Optional[float]  # ||f||_p / ||f#||_p, mean-zero inputs only
    mq_bound: Optional[float]  # ||M_q f||_p / ||f||_p, requires p > q
    concav_lhs: Optional[float] = None
    concav_rhs: Optional[float] = None
    concav_rel_diff: Optional[float] = None

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "fs_ratio": self.fs_ratio,
            "mq_bound": self.mq_bound,
            "concav_lhs": self.concav_lhs,
            "concav_rhs": self.concav_rhs,
            "concav_rel_diff": self.concav_rel_diff,
        }


def maximal_norm_report(f: SignalLike, p: float, q: float) -> MaximalReport:
    """Norm comparisons for one signal.

    ``fs_ratio`` is only defined for mean-zero signals (the sharp function
    kills constants); ``mq_bound`` only for p > q, where the q-power maximal
    operator is bounded.  For 2-convex lattice input the report also checks
    the concavification identity ||M_2 f||_p^2 = ||M(|f|^2)||_{p/2, r/2}.
    """
    vals, period, spec = _values(f)
    if spec is not None:
        f_norm = mixed_norm(f, p)
    else:
        f_norm = grid_pnorm(vals[:, 0], p)

    means = vals.mean(axis=0)
    scale = float(np.max(np.abs(vals))) or 1.0
    mean_zero = bool(np.all(np.abs(means) <= 1e-12 * scale))
    fs_ratio = None
    if mean_zero:
        sharp = sharp_function(f)
        sharp_vals = sharp.samples.real if isinstance(sharp, GridSignal) else np.asarray(sharp)
        s_norm = grid_pnorm(sharp_vals, p)
        fs_ratio = f_norm / s_norm if s_norm > 0 else None

    mq_bound = None
    if p > q and f_norm > 0:
        mq = mq_maximal(f, q, mode="norm")
        mq_vals = mq.samples.real if isinstance(mq, GridSignal) else np.asarray(mq)
        mq_bound = grid_pnorm(mq_vals, p) / f_norm

    lhs = rhs = rel = None
    if spec is not None and spec.is_two_convex and p >= 2:
        m2 = mq_maximal(f, 2.0, mode="coordinate")
        lhs = mixed_norm(m2, p) ** 2
        sq = LatticeSignal(np.abs(vals) ** 2, period, spec)
        rhs = concavified_norm(sq, p / 2.0)
        rel = abs(lhs - rhs) / max(abs(rhs), 1e-300)
    return MaximalReport(p, q, fs_ratio, mq_bound, lhs, rhs, rel)
