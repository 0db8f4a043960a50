"""Shared helpers for the test suite."""

import numpy as np
import pytest

from tsre.genotype import GenotypeMatrix, compute_grm, standardize


def packed_to_dense(tri: np.ndarray, n: int) -> np.ndarray:
    """Expand a packed lower triangle (diagonal included) to a dense matrix."""
    out = np.zeros((n, n))
    k = 0
    for i in range(n):
        for j in range(i + 1):
            out[i, j] = tri[k]
            out[j, i] = tri[k]
            k += 1
    return out


def dense_to_packed(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    return np.array([a[i, j] for i in range(n) for j in range(i + 1)])


def random_standardized(rng, n, m):
    """A standardized genotype panel with no degenerate columns."""
    raw = rng.integers(0, 3, size=(n, m)).astype(np.float64)
    # force variation in every column so standardize keeps all of them
    raw[0, :] = 0.0
    raw[1, :] = 2.0
    gm = GenotypeMatrix(
        dosages=raw,
        variant_ids=[f"v{k}" for k in range(m)],
        individual_ids=[f"i{r}" for r in range(n)],
    )
    return standardize(gm)


def random_grm(rng, n, m):
    return compute_grm(random_standardized(rng, n, m))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
