"""Frequency-interval decompositions and square-function experiments.

Exact dyadic interval combinatorics, sharp and smooth frequency projections on
the discrete torus, Rademacher-average estimation, discrete maximal functions,
and the oscillatory kernels behind the associated singular integral — plus a
batch experiment runner that estimates the constants in the square-function
inequalities empirically.
"""

__version__ = "0.1.0"
