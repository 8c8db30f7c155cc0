"""Signals on the discrete torus and their frequency projections.

A :class:`GridSignal` holds N complex samples of a period-L signal, sampled at
t_n = nL/N.  Frequency bin k (fft order, k in [-N/2, N/2)) carries frequency
k/L cycles per unit, and the transform convention is

    fhat(k) = (1/N) sum_n f(n) exp(-2 pi i k n / N),

so a single complex exponential has a unit coefficient.  Bin membership in a
half-open rational interval is decided exactly (integer threshold comparison),
which makes the sharp Riesz-type projection reproducible bit for bit.

The smooth counterpart multiplies the spectrum by an adapted bump: a profile
equal to 1 on the inner half of the target band, vanishing outside the
doubled band, glued smoothly in between.
"""

import math
from fractions import Fraction

import numpy as np

from .errors import DomainError, NumericalError
from .intervals import Interval
from .quadrature import panel_nodes

__all__ = [
    "GridSignal",
    "AdaptedBump",
    "make_adapted_bump",
    "default_bump",
    "bins",
    "bin_mask",
    "bump_multiplier",
    "sharp_project",
    "smooth_project",
    "signal_to_json",
    "signal_from_json",
]


def _check_grid_size(n: int) -> int:
    n = int(n)
    if n < 8 or (n & (n - 1)) != 0:
        raise DomainError(f"grid size must be a power of two >= 8, got {n}")
    return n


def bins(n: int) -> np.ndarray:
    """Signed bin indices in fft storage order: 0..N/2-1, -N/2..-1."""
    k = np.arange(n, dtype=np.int64)
    k[k >= n // 2] -= n
    return k


class GridSignal:
    """Complex samples on a uniform periodic grid with rational period."""

    __slots__ = ("samples", "period", "_spectrum")

    def __init__(self, samples, period, _spectrum=None):
        arr = np.asarray(samples, dtype=np.complex128).copy()
        if arr.ndim != 1:
            raise DomainError("samples must be one-dimensional")
        _check_grid_size(arr.shape[0])
        arr.flags.writeable = False
        self.samples = arr
        self.period = Fraction(period)
        if self.period <= 0:
            raise DomainError("period must be positive")
        self._spectrum = _spectrum

    @property
    def n(self) -> int:
        return self.samples.shape[0]

    def spectrum(self) -> np.ndarray:
        """Normalized DFT, cached; projections built from a spectrum keep it
        bit-identical instead of round-tripping through the samples."""
        if self._spectrum is None:
            spec = np.fft.fft(self.samples) / self.n
            spec.flags.writeable = False
            self._spectrum = spec
        return self._spectrum

    @classmethod
    def from_spectrum(cls, spectrum, period) -> "GridSignal":
        spec = np.asarray(spectrum, dtype=np.complex128).copy()
        _check_grid_size(spec.shape[0])
        samples = np.fft.ifft(spec) * spec.shape[0]
        spec.flags.writeable = False
        return cls(samples, period, _spectrum=spec)

    def times(self) -> np.ndarray:
        return np.arange(self.n) * (float(self.period) / self.n)

    def frequencies(self) -> np.ndarray:
        return bins(self.n) / float(self.period)

    def energy(self) -> float:
        """(1/N) sum |f|^2; equals sum |fhat|^2 (Parseval)."""
        return float(np.mean(np.abs(self.samples) ** 2))

    def __eq__(self, other):
        return (
            isinstance(other, GridSignal)
            and self.period == other.period
            and np.array_equal(self.samples, other.samples)
        )

    def __repr__(self):
        return f"GridSignal(n={self.n}, period={self.period})"


def bin_mask(n: int, period: Fraction, interval: Interval) -> np.ndarray:
    """Boolean mask of bins whose frequency k/L lies in (a, b].

    Exact: k/L > a iff k > aL iff k >= floor(aL) + 1, and k/L <= b iff
    k <= floor(bL); both thresholds are computed in rational arithmetic.
    """
    period = Fraction(period)
    klo = math.floor(interval.a * period) + 1
    khi = math.floor(interval.b * period)
    k = bins(n)
    return (k >= klo) & (k <= khi)


def sharp_project(f: GridSignal, interval: Interval) -> GridSignal:
    """Restrict the spectrum of ``f`` to the frequency interval (half-open)."""
    mask = bin_mask(f.n, f.period, interval)
    return GridSignal.from_spectrum(np.where(mask, f.spectrum(), 0.0), f.period)


# -- adapted bump --------------------------------------------------------------


def _sigma(s: np.ndarray) -> np.ndarray:
    out = np.zeros_like(s, dtype=float)
    pos = s > 0
    out[pos] = np.exp(-1.0 / s[pos])
    return out


def _glue(s: np.ndarray) -> np.ndarray:
    """Smooth transition h on [0,1] with h(0)=1, h(1)=0, h(1/2)=1/2."""
    s = np.asarray(s, dtype=float)
    num = _sigma(1.0 - s)
    return num / (_sigma(s) + num)


class AdaptedBump:
    """Even profile with plateau half-width 1/2 and support half-width 1.

    ``spectral`` evaluates the profile; ``spatial`` evaluates its inverse
    Fourier transform psi by composite Gauss-Legendre quadrature of
    2 * int_0^1 profile(xi) cos(2 pi xi x) dxi, refined until two successive
    panel levels agree to ``tol`` everywhere.  ``spatial_fast`` serves bulk
    kernel evaluations from a cubic-spline cache on [0, x_max] (psi is even),
    returning 0 beyond the cache range; ``decay_constant`` reports the
    verified sup of x^2 |psi(x)| so callers can bound what the truncation
    discards.
    """

    def __init__(self, tol: float = 1e-10, x_max: float = 64.0, cache_step: float = 1.0 / 256):
        self.tol = float(tol)
        self.x_max = float(x_max)
        self.cache_step = float(cache_step)
        self._spline = None
        self._decay = None

    # profile -----------------------------------------------------------

    def spectral(self, xi) -> np.ndarray:
        xi = np.abs(np.asarray(xi, dtype=float))
        out = np.zeros_like(xi)
        out[xi <= 0.5] = 1.0
        trans = (xi > 0.5) & (xi < 1.0)
        out[trans] = _glue(2.0 * xi[trans] - 1.0)
        return out

    def spectral_fraction(self, xi: Fraction) -> float:
        """Profile at an exact rational point; plateau and support membership
        decided by rational comparison so band edges are never fuzzed."""
        xi = abs(Fraction(xi))
        if xi <= Fraction(1, 2):
            return 1.0
        if xi >= 1:
            return 0.0
        return float(_glue(np.array([2.0 * float(xi) - 1.0]))[0])

    # spatial side ------------------------------------------------------

    def spatial(self, x, tol: float = None) -> np.ndarray:
        """psi at the given points, by refined quadrature (vectorized)."""
        tol = self.tol if tol is None else tol
        x = np.atleast_1d(np.asarray(x, dtype=float))
        panels = max(8, int(np.ceil(np.max(np.abs(x)))) + 1)
        prev = self._cos_transform(x, panels)
        for _ in range(10):
            panels *= 2
            cur = self._cos_transform(x, panels)
            if np.max(np.abs(cur - prev)) <= tol:
                return cur
            prev = cur
        raise NumericalError("bump spatial quadrature did not stabilize")

    def _cos_transform(self, x: np.ndarray, panels: int) -> np.ndarray:
        nodes, weights = panel_nodes(0.0, 1.0, panels)
        prof = self.spectral(nodes) * weights
        return 2.0 * np.cos(2.0 * np.pi * np.outer(x, nodes)) @ prof

    def _ensure_cache(self):
        if self._spline is None:
            from scipy.interpolate import CubicSpline

            grid = np.arange(0.0, self.x_max + self.cache_step, self.cache_step)
            vals = self.spatial(grid)
            self._spline = CubicSpline(grid, vals)
            self._decay = float(np.max(grid**2 * np.abs(vals)))

    def spatial_fast(self, x) -> np.ndarray:
        """Spline-cached psi; exact zeros beyond the cache range."""
        self._ensure_cache()
        x = np.abs(np.asarray(x, dtype=float))
        out = np.zeros_like(x)
        inside = x <= self.x_max
        out[inside] = self._spline(x[inside])
        return out

    def decay_constant(self) -> float:
        """Verified sup of x^2 |psi(x)| over the cached range."""
        self._ensure_cache()
        return self._decay

    def tail_bound(self) -> float:
        """Observed |psi| at the truncation edge (what spatial_fast discards)."""
        self._ensure_cache()
        return float(abs(self._spline(self.x_max)))


def make_adapted_bump(tol: float = 1e-10) -> AdaptedBump:
    return AdaptedBump(tol=tol)


_DEFAULT_BUMP = None


def default_bump() -> AdaptedBump:
    """Shared bump instance (the spatial cache is expensive to rebuild)."""
    global _DEFAULT_BUMP
    if _DEFAULT_BUMP is None:
        _DEFAULT_BUMP = make_adapted_bump()
    return _DEFAULT_BUMP


def bump_multiplier(n: int, period: Fraction, interval: Interval, bump: AdaptedBump) -> np.ndarray:
    """Multiplier values psi_hat((k/L - c) / |I|) on every bin.

    Plateau and support membership are decided in rational arithmetic; the
    glue is evaluated in floats only strictly inside the transition band.
    """
    period = Fraction(period)
    c, length = interval.center, interval.length
    k = bins(n)
    out = np.zeros(n)
    # |k/L - c| <= len/2  <=>  (c - len/2) L <= k <= (c + len/2) L
    plo = math.ceil((c - length / 2) * period)
    phi = math.floor((c + length / 2) * period)
    out[(k >= plo) & (k <= phi)] = 1.0
    # transition: len/2 < |k/L - c| < len
    slo = math.floor((c - length) * period) + 1
    shi = math.ceil((c + length) * period) - 1
    trans = (k >= slo) & (k <= shi) & ~((k >= plo) & (k <= phi))
    for idx in np.nonzero(trans)[0]:
        xi = (Fraction(int(k[idx])) / period - c) / length
        out[idx] = bump.spectral_fraction(xi)
    return out


def smooth_project(f: GridSignal, interval: Interval, bump: AdaptedBump) -> GridSignal:
    """Convolution with the bump adapted to ``interval``, as a multiplier."""
    mult = bump_multiplier(f.n, f.period, interval, bump)
    return GridSignal.from_spectrum(f.spectrum() * mult, f.period)


# -- serialization -------------------------------------------------------------


def signal_to_json(f: GridSignal) -> dict:
    data = np.empty(2 * f.n)
    data[0::2] = f.samples.real
    data[1::2] = f.samples.imag
    return {
        "n": f.n,
        "period": [f.period.numerator, f.period.denominator],
        "data": data.tolist(),
    }


def signal_from_json(doc: dict) -> GridSignal:
    n = int(doc["n"])
    num, den = doc["period"]
    data = np.asarray(doc["data"], dtype=float)
    if data.shape[0] != 2 * n:
        raise DomainError("interleaved data length must be 2 n")
    return GridSignal(data[0::2] + 1j * data[1::2], Fraction(num, den))
