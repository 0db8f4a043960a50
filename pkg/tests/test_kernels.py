"""Packed-triangle reduction kernels against explicit double-loop oracles."""

import os
import subprocess
import sys

import numpy as np
import pytest

from tsre import kernels
from tsre.kernels import _py

from conftest import dense_to_packed

CASES = [(2, 0), (3, 1), (5, 2), (17, 3), (40, 4), (7, 5)]


def _random_instance(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n))
    a = (a + a.T) / 2
    tri = np.ascontiguousarray(dense_to_packed(a))
    x = rng.normal(size=n)
    y = rng.normal(size=n)
    return a, tri, x, y


def _pair_sums_oracle(a, x, y):
    n = a.shape[0]
    s_axx = s_axy = s_a = s_aa = 0.0
    for i in range(n):
        for j in range(i):
            s_a += a[i, j]
            s_aa += a[i, j] ** 2
            s_axx += a[i, j] * x[i] * x[j]
            s_axy += a[i, j] * (x[i] * y[j] + y[i] * x[j]) / 2
    return s_axx, s_axy, s_a, s_aa


def _diag_sums_oracle(a, x, y, theta, a_bar, e_bar):
    n = a.shape[0]
    s_t = s_tt = 0.0
    for i in range(n):
        for j in range(i):
            e = (x[i] * y[j] + y[i] * x[j]) / 2 - theta * x[i] * x[j]
            t = (a[i, j] - a_bar) * (e - e_bar)
            s_t += t
            s_tt += t * t
    return s_t, s_tt


@pytest.mark.parametrize("n,seed", CASES)
def test_pair_sums_matches_double_loop(n, seed):
    a, tri, x, y = _random_instance(n, seed)
    got = kernels.pair_sums(tri, n, x, y)
    want = _pair_sums_oracle(a, x, y)
    np.testing.assert_allclose(got, want, rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("n,seed", CASES)
def test_diag_sums_matches_double_loop(n, seed):
    a, tri, x, y = _random_instance(n, seed)
    theta, a_bar, e_bar = 0.37, 0.05, -0.2
    got = kernels.diag_sums(tri, n, x, y, theta, a_bar, e_bar)
    want = _diag_sums_oracle(a, x, y, theta, a_bar, e_bar)
    np.testing.assert_allclose(got, want, rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("n,seed", CASES)
def test_backends_agree(n, seed):
    if kernels.BACKEND != "compiled":
        pytest.skip("compiled backend unavailable")
    _, tri, x, y = _random_instance(n, seed)
    fast = kernels.pair_sums(tri, n, x, y)
    slow = _py.pair_sums(tri, n, x, y)
    np.testing.assert_allclose(fast, slow, rtol=1e-12, atol=1e-14)
    fast_d = kernels.diag_sums(tri, n, x, y, 0.3, 0.01, 0.02)
    slow_d = _py.diag_sums(tri, n, x, y, 0.3, 0.01, 0.02)
    np.testing.assert_allclose(fast_d, slow_d, rtol=1e-12, atol=1e-14)


def test_env_var_forces_python_backend():
    code = "import tsre; print(tsre.KERNEL_BACKEND)"
    env = dict(os.environ, TSRE_BACKEND="python")
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True
    )
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == "python"


def test_single_individual_has_no_pairs():
    tri = np.array([1.0])
    x = np.array([2.0])
    assert kernels.pair_sums(tri, 1, x, x) == (0.0, 0.0, 0.0, 0.0)
