#!/usr/bin/env python3
"""Independent Monte Carlo oracles for frozen expected values in the C++ tests.

Run once; the printed numbers are pasted into tests/test_induced.cpp,
tests/test_evenness.cpp and tests/acceptance.cpp.  Uses numpy only, so it
shares no code path with the C++ implementation.
"""
import numpy as np

EPS = 0.01
GRID = np.arange(20.0, 101.0, 1.0)


def saturation(alpha, beta, chunk=100_000):
    lo, hi = np.log(EPS / (1 - EPS)), np.log((1 - EPS) / EPS)
    sat = 0
    for s in range(0, alpha.size, chunk):
        eta = alpha[s:s + chunk, None] + beta[s:s + chunk, None] * GRID[None, :]
        inside = (eta > lo) & (eta < hi)
        sat += np.count_nonzero(~inside.any(axis=1))
    return sat / alpha.size


def main():
    rng = np.random.default_rng(20240601)
    n = 1_000_000

    a = rng.normal(0, 25, n)
    b = rng.normal(0, 25, n)
    print("iid N(0,25^2) saturation:", saturation(a, b))

    X = np.column_stack([np.ones_like(GRID), GRID])
    xtx_inv = np.linalg.inv(X.T @ X)
    lev = np.array([1.0, 20.0]) @ xtx_inv @ np.array([1.0, 20.0])
    g = 25.0 / lev
    print("calibrated g:", g)
    L = np.linalg.cholesky(g * xtx_inv)
    z = rng.standard_normal((n, 2)) @ L.T
    print("g-prior saturation:", saturation(z[:, 0], z[:, 1]))

    # evenness under Dir(1,...,1), K = 8
    m = 10_000_000
    hits = 0
    for s in range(0, m, 1_000_000):
        t = rng.dirichlet(np.ones(8), 1_000_000)
        h = -(t * np.log(t)).sum(axis=1) / np.log(8)
        hits += np.count_nonzero(h > 0.5)
    print("P(H > 0.5 | Dir(1^8)):", hits / m)


if __name__ == "__main__":
    main()
