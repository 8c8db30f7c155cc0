"""Monte Carlo and exhaustive estimation of Rademacher-average norms.

The p-th moment of || sum_j eps_j x_j || over independent +-1 signs is the
basic quantity; the double-indexed variant uses two independent sign systems
with coefficient eps_j eps'_k.  Whenever the total pattern count 2^n is at
most ``EXHAUSTIVE_LIMIT`` the Monte Carlo average is silently replaced by
exact enumeration, which turns the distributional identities of the test
suite into equalities instead of confidence intervals.  Ratio estimators
(contraction checks etc.) reuse one ensemble for both sides - common random
numbers - so their Monte Carlo noise largely cancels.
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import PreconditionError
from .lattice import LatticeSignal, LatticeSpec, mixed_norm, square_sum, vector_norm
from .rng import enumerate_signs, sign_matrix, stream

__all__ = [
    "EXHAUSTIVE_LIMIT",
    "SignEnsemble",
    "RadEstimate",
    "rad_norm_mc",
    "contraction_check",
    "ContractionReport",
    "khintchine_alpha_report",
    "riesz_transfer_check",
    "RieszTransferReport",
]

EXHAUSTIVE_LIMIT = 4096

_BOOTSTRAP_RESAMPLES = 200


@dataclass(frozen=True)
class SignEnsemble:
    """Reproducible +-1 trial matrices derived from (seed, shape, stream)."""

    seed: int
    trials: int
    generator: str = "philox"

    def __post_init__(self):
        if self.trials < 64:
            raise PreconditionError("need at least 64 trials")
        if self.generator != "philox":
            raise PreconditionError(f"unknown generator id {self.generator!r}")

    def signs(self, n: int, stream_id: int = 0) -> np.ndarray:
        return sign_matrix(stream(self.seed, stream_id), self.trials, n)


@dataclass(frozen=True)
class RadEstimate:
    value: float
    stderr: float
    p: float
    trials: int
    method: str  # "exhaustive" or "monte-carlo"
    seed: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "stderr": self.stderr,
            "p": self.p,
            "trials": self.trials,
            "method": self.method,
            "seed": self.seed,
        }


def _payload(xs: Sequence, spec: Optional[LatticeSpec]):
    """Stack inputs to (n, *shape) complex and return the per-combo norm map."""
    first = xs[0]
    if isinstance(first, LatticeSignal):
        sp = first.spec
        arr = np.stack([x.values for x in xs])

        def norms(combos, p):  # combos: (M, N, d)
            slices = vector_norm(combos, sp.r, axis=2)
            return np.mean(slices**p, axis=1) ** (1.0 / p)

        return arr, norms
    arr = np.asarray(xs, dtype=np.complex128)
    if arr.ndim == 1:  # scalars
        return arr, lambda combos, p: np.abs(combos)
    r = spec.r if spec is not None else 2.0

    def norms(combos, p):  # combos: (M, d)
        return vector_norm(combos, r, axis=1)

    return arr, norms


def _moment(norms: np.ndarray, p: float) -> float:
    return float(np.mean(norms**p) ** (1.0 / p))


def _bootstrap_stderr(norms: np.ndarray, p: float, seed: int) -> float:
    gen = stream(seed, 2**32 + 1)  # bootstrap stream, disjoint from sign streams
    t = norms.shape[0]
    idx = gen.integers(0, t, size=(_BOOTSTRAP_RESAMPLES, t))
    vals = np.mean(norms[idx] ** p, axis=1) ** (1.0 / p)
    return float(np.std(vals))


def rad_norm_mc(
    xs,
    p: float,
    ens: SignEnsemble,
    double_index: bool = False,
    spec: Optional[LatticeSpec] = None,
) -> RadEstimate:
    """p-th-moment Rademacher average of the given coefficients.

    Single index: ``xs`` is a flat sequence and the signs are eps_j.  Double
    index: ``xs`` is an (n, m) nested sequence and the coefficient of x_{jk}
    is eps_j eps'_k with the two systems independent.  Enumeration replaces
    sampling when the pattern count allows.
    """
    if not (1 <= p < math.inf):
        raise PreconditionError("p must be finite and >= 1")
    if double_index:
        rows = [list(row) for row in xs]
        n, m = len(rows), len(rows[0])
        flat, norms = _payload([x for row in rows for x in row], spec)
        arr = flat.reshape((n, m) + flat.shape[1:])
        if 2 ** (n + m) <= EXHAUSTIVE_LIMIT:
            su, sv = enumerate_signs(n).astype(float), enumerate_signs(m).astype(float)
            coeff = np.einsum("uj,vk->uvjk", su, sv).reshape(-1, n * m)
            combos = np.tensordot(coeff, arr.reshape((n * m,) + flat.shape[1:]), axes=1)
            vals = norms(combos, p)
            return RadEstimate(_moment(vals, p), 0.0, p, vals.shape[0], "exhaustive")
        sj = ens.signs(n, 0).astype(float)
        sk = ens.signs(m, 1).astype(float)
        coeff = np.einsum("tj,tk->tjk", sj, sk).reshape(ens.trials, n * m)
        combos = np.tensordot(coeff, arr.reshape((n * m,) + flat.shape[1:]), axes=1)
        vals = norms(combos, p)
        return RadEstimate(
            _moment(vals, p), _bootstrap_stderr(vals, p, ens.seed), p, ens.trials,
            "monte-carlo", ens.seed,
        )
    xs = list(xs)
    arr, norms = _payload(xs, spec)
    n = len(xs)
    if 2**n <= EXHAUSTIVE_LIMIT:
        signs = enumerate_signs(n).astype(float)
        combos = np.tensordot(signs, arr, axes=1)
        vals = norms(combos, p)
        return RadEstimate(_moment(vals, p), 0.0, p, vals.shape[0], "exhaustive")
    signs = ens.signs(n, 0).astype(float)
    combos = np.tensordot(signs, arr, axes=1)
    vals = norms(combos, p)
    return RadEstimate(
        _moment(vals, p), _bootstrap_stderr(vals, p, ens.seed), p, ens.trials,
        "monte-carlo", ens.seed,
    )


def _scale(xs, alpha):
    if isinstance(xs[0], LatticeSignal):
        return [
            LatticeSignal(a * x.values, x.period, x.spec) for a, x in zip(alpha, xs)
        ]
    return [a * np.asarray(x, dtype=np.complex128) for a, x in zip(alpha, xs)]


@dataclass(frozen=True)
class ContractionReport:
    ratio: float
    scaled: RadEstimate
    original: RadEstimate
    alpha_is_real: bool


def contraction_check(xs, alpha, p: float, ens: SignEnsemble, spec=None) -> ContractionReport:
    """Ratio rad(alpha * xs) / rad(xs) under a shared sign ensemble.

    For real alpha with |alpha_j| <= 1 the ratio cannot exceed 1 (up to Monte
    Carlo noise); for complex alpha it is reported without assertion.
    """
    alpha = np.asarray(alpha, dtype=np.complex128)
    if np.any(np.abs(alpha) > 1):
        raise PreconditionError("contraction requires |alpha_j| <= 1")
    den = rad_norm_mc(xs, p, ens, spec=spec)
    num = rad_norm_mc(_scale(list(xs), alpha), p, ens, spec=spec)
    ratio = 0.0 if den.value == 0 else num.value / den.value
    return ContractionReport(ratio, num, den, bool(np.all(alpha.imag == 0)))


def khintchine_alpha_report(
    gs, p: float, ens: SignEnsemble, double_shape=None, spec=None
) -> dict:
    """Khintchine-type ratio and the double-index (alpha-property) ratio.

    ``rad_vs_square`` compares the Rademacher average against the norm of the
    square sum; ``alpha_property`` compares the eps_j eps'_k average against
    the fully independent eps_{jk} average on the same coefficients, with
    ``double_shape`` controlling how the flat list is folded into (n, m).
    """
    gs = list(gs)
    rad = rad_norm_mc(gs, p, ens, spec=spec)
    if isinstance(gs[0], LatticeSignal):
        sq = mixed_norm(square_sum(gs), p)
    else:
        arr, norms = _payload(gs, spec)
        sq_vec = np.sqrt(np.sum(np.abs(arr) ** 2, axis=0))
        vals = norms(sq_vec[None, ...], p)
        sq = float(vals[0])
    n, m = double_shape if double_shape is not None else (len(gs), 1)
    if n * m != len(gs):
        raise PreconditionError("double_shape must factor the input length")
    rows = [gs[i * m : (i + 1) * m] for i in range(n)]
    double = rad_norm_mc(rows, p, ens, double_index=True, spec=spec)
    indep = rad_norm_mc(gs, p, ens, spec=spec)
    return {
        "rad_vs_square": rad.value / sq if sq else 0.0,
        "alpha_property": double.value / indep.value if indep.value else 0.0,
        "rad": rad,
        "double": double,
        "independent": indep,
    }


@dataclass(frozen=True)
class RieszTransferReport:
    c_row: float
    lhs: float
    rhs: RadEstimate
    ratio: float


def riesz_transfer_check(h, vectors, spec: LatticeSpec, ens: SignEnsemble) -> RieszTransferReport:
    """Row-system transfer ratio ||sum_j h_j a_j|| / (c_row * rad(a)).

    ``h`` is an n x S matrix of rows in L^2 (counting measure) and the a_j
    live in l^r_d with r <= 2; c_row is the best constant in
    ||sum alpha_j h_j||_2 <= c (sum |alpha_j|^2)^(1/2), i.e. the largest
    singular value of the row matrix.
    """
    if spec.r > 2:
        raise PreconditionError("value space must have cotype 2 (r <= 2)")
    h = np.asarray(h, dtype=np.complex128)
    a = np.asarray(vectors, dtype=np.complex128)
    if a.ndim == 1:
        a = a[:, None]
    if h.shape[0] != a.shape[0]:
        raise PreconditionError("need one row h_j per vector a_j")
    c_row = float(np.linalg.svd(h, compute_uv=False)[0]) if h.size else 0.0
    m = h.T @ a  # (S, d): value at each counting-measure point
    lhs = float(np.sqrt(np.sum(vector_norm(m, spec.r, axis=1) ** 2)))
    rhs = rad_norm_mc(list(a), 2.0, ens, spec=spec)
    denom = c_row * rhs.value
    ratio = 0.0 if lhs == 0.0 else lhs / denom
    return RieszTransferReport(c_row, lhs, rhs, ratio)
