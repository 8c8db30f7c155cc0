"""Finite-dimensional lattice value spaces and mixed norms.

The value space is l^r_d (d coordinates, exponent r in [1, inf]); a
:class:`LatticeSignal` is an N x d complex array on the periodic grid, normed
in L^p(grid; l^r) with normalized counting measure on the grid.  The
2-concavification replaces r by r/2 (a lattice exactly when r >= 2) and obeys
|| |f|^2 ||_{(2)} = ||f||^2 coordinate-slice by coordinate-slice.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, PreconditionError
from .intervals import Interval
from .spectral import AdaptedBump, GridSignal, bin_mask, bump_multiplier

__all__ = [
    "LatticeSpec",
    "LatticeSignal",
    "vector_norm",
    "mixed_norm",
    "square_sum",
    "concavified_norm",
    "sharp_project_lattice",
    "smooth_project_lattice",
    "lattice_signal_to_json",
    "lattice_signal_from_json",
]


@dataclass(frozen=True)
class LatticeSpec:
    """The lattice l^r_d."""

    d: int
    r: float

    def __post_init__(self):
        if self.d < 1:
            raise DomainError("dimension must be >= 1")
        object.__setattr__(self, "r", float(self.r))
        if not (self.r >= 1):
            raise DomainError("exponent r must be in [1, inf]")

    @property
    def is_two_convex(self) -> bool:
        return self.r >= 2

    def dual(self) -> "LatticeSpec":
        if self.r == 1:
            return LatticeSpec(self.d, math.inf)
        if math.isinf(self.r):
            return LatticeSpec(self.d, 1.0)
        return LatticeSpec(self.d, self.r / (self.r - 1.0))

    def concavification(self) -> "LatticeSpec":
        """l^{r/2}_d; requires 2-convexity so the result is a lattice norm."""
        if not self.is_two_convex:
            raise PreconditionError("2-concavification needs r >= 2")
        return LatticeSpec(self.d, math.inf if math.isinf(self.r) else self.r / 2.0)


def vector_norm(values: np.ndarray, r: float, axis: int = -1) -> np.ndarray:
    """l^r norm along one axis (r may be inf)."""
    a = np.abs(values)
    if math.isinf(r):
        return a.max(axis=axis)
    if r == 1:
        return a.sum(axis=axis)
    if r == 2:
        return np.sqrt((a * a).sum(axis=axis))
    return (a**r).sum(axis=axis) ** (1.0 / r)


class LatticeSignal:
    """N x d complex values on a periodic grid, with an l^r_d value norm."""

    __slots__ = ("values", "period", "spec", "_spectrum")

    def __init__(self, values, period, spec: LatticeSpec, _spectrum=None):
        arr = np.asarray(values, dtype=np.complex128).copy()
        if arr.ndim == 1:
            arr = arr[:, None]
        if arr.ndim != 2 or arr.shape[1] != spec.d:
            raise DomainError(f"values must be N x {spec.d}")
        if not np.all(np.isfinite(arr)):
            raise DomainError("values must be finite")
        arr.flags.writeable = False
        self.values = arr
        self.period = Fraction(period)
        self.spec = spec
        self._spectrum = _spectrum

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def spectrum(self) -> np.ndarray:
        if self._spectrum is None:
            spec = np.fft.fft(self.values, axis=0) / self.n
            spec.flags.writeable = False
            self._spectrum = spec
        return self._spectrum

    @classmethod
    def from_spectrum(cls, spectrum, period, spec: LatticeSpec) -> "LatticeSignal":
        sp = np.asarray(spectrum, dtype=np.complex128).copy()
        samples = np.fft.ifft(sp, axis=0) * sp.shape[0]
        sp.flags.writeable = False
        return cls(samples, period, spec, _spectrum=sp)

    def coordinate(self, w: int) -> GridSignal:
        return GridSignal(self.values[:, w], self.period)

    def __repr__(self):
        return f"LatticeSignal(n={self.n}, d={self.spec.d}, r={self.spec.r})"


def mixed_norm(F: LatticeSignal, p: float) -> float:
    """|| t -> ||F(t)||_{l^r} ||_{L^p} with normalized counting measure."""
    if not (p >= 1):
        raise DomainError("p must be in [1, inf]")
    slice_norms = vector_norm(F.values, F.spec.r, axis=1)
    if math.isinf(p):
        return float(slice_norms.max())
    return float(np.mean(slice_norms**p) ** (1.0 / p))


def square_sum(gs) -> LatticeSignal:
    """Pointwise coordinatewise (sum_j |g_j|^2)^(1/2)."""
    gs = list(gs)
    if not gs:
        raise PreconditionError("need at least one signal")
    first = gs[0]
    for g in gs[1:]:
        if g.values.shape != first.values.shape or g.period != first.period or g.spec != first.spec:
            raise PreconditionError("signals must share grid and lattice spec")
    acc = np.zeros(first.values.shape, dtype=float)
    for g in gs:
        acc += np.abs(g.values) ** 2
    return LatticeSignal(np.sqrt(acc), first.period, first.spec)


def concavified_norm(F: LatticeSignal, p: float) -> float:
    """Norm of F in L^p(grid; l^{r/2}); requires a 2-convex spec."""
    half = F.spec.concavification()
    # same data, value norm taken with exponent r/2 (a quasi-norm for r < 4)
    slice_norms = vector_norm(F.values, half.r, axis=1)
    if math.isinf(p):
        return float(slice_norms.max())
    return float(np.mean(slice_norms**p) ** (1.0 / p))


def sharp_project_lattice(F: LatticeSignal, interval: Interval) -> LatticeSignal:
    """Coordinatewise sharp frequency projection (one mask, all coordinates)."""
    mask = bin_mask(F.n, F.period, interval)
    return LatticeSignal.from_spectrum(
        np.where(mask[:, None], F.spectrum(), 0.0), F.period, F.spec
    )


def smooth_project_lattice(F: LatticeSignal, interval: Interval, bump: AdaptedBump) -> LatticeSignal:
    mult = bump_multiplier(F.n, F.period, interval, bump)
    return LatticeSignal.from_spectrum(F.spectrum() * mult[:, None], F.period, F.spec)


def lattice_signal_to_json(F: LatticeSignal) -> dict:
    stacked = np.stack([F.values.real, F.values.imag], axis=-1)  # N x d x 2
    return {
        "n": F.n,
        "d": F.spec.d,
        "r": "inf" if math.isinf(F.spec.r) else F.spec.r,
        "period": [F.period.numerator, F.period.denominator],
        "data": stacked.tolist(),
    }


def lattice_signal_from_json(doc: dict) -> LatticeSignal:
    r = math.inf if doc["r"] == "inf" else float(doc["r"])
    spec = LatticeSpec(int(doc["d"]), r)
    num, den = doc["period"]
    data = np.asarray(doc["data"], dtype=float)
    values = data[..., 0] + 1j * data[..., 1]
    return LatticeSignal(values, Fraction(num, den), spec)
