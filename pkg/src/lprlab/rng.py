"""Deterministic, splittable random streams.

Every random quantity in the package is drawn from a counter-based Philox
generator keyed by a recorded master seed plus an integer path, so corpus
cases can run in any order (or in parallel) and still reproduce bit-for-bit.
"""

import numpy as np

__all__ = ["stream", "sign_matrix", "enumerate_signs"]


def stream(master_seed: int, *path: int) -> np.random.Generator:
    """Generator for the sub-stream identified by ``path`` under ``master_seed``."""
    ss = np.random.SeedSequence(entropy=int(master_seed), spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.Philox(ss))


def sign_matrix(gen: np.random.Generator, trials: int, n: int) -> np.ndarray:
    """trials x n matrix of independent +-1 entries."""
    return 2 * gen.integers(0, 2, size=(trials, n), dtype=np.int8) - 1


def enumerate_signs(n: int) -> np.ndarray:
    """All 2**n sign patterns as a (2**n, n) matrix of +-1 entries.

    Used to replace Monte Carlo averages by exact enumeration at small n.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    codes = np.arange(2**n, dtype=np.uint32)
    bits = (codes[:, None] >> np.arange(n, dtype=np.uint32)) & 1
    return (2 * bits - 1).astype(np.int8)
