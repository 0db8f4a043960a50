"""Pairwise second-moment regression of phenotype cross-products on the GRM.

For each of the N = n(n-1)/2 unordered pairs i < j the relatedness entry
A_ij predicts the exposure pair product X_i*X_j with slope eta and the
symmetrized cross product (X_i*Y_j + Y_i*X_j)/2 with slope delta; the causal
effect estimate is the slope ratio delta/eta.  Everything reduces to pair
sums that stream over the packed GRM triangle, so no N-pair design is ever
materialized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DataError, EstimationError
from .genotype import Grm

__all__ = [
    "PairMoments",
    "TsreFit",
    "pair_moments",
    "tsre_estimate",
    "tsre_stderr",
    "moment_diagnostic",
]

# Denominator guard, in correlation units between A_ij and X_i*X_j over
# pairs.  Deliberately tiny: it rejects exactly degenerate inputs (constant
# exposure, zero GRM) while letting genuinely noisy ratios through, since
# the many-null-variant regime is expected to produce wild estimates rather
# than errors.
MIN_SIGNAL = 1e-6


@dataclass(frozen=True)
class PairMoments:
    """Sufficient statistics over all unordered pairs i < j.

    s_axx accumulates A_ij*X_i*X_j, s_axy the symmetrized cross products
    A_ij*(X_i*Y_j + Y_i*X_j)/2, s_a and s_aa the GRM entries and their
    squares, and s_xx/s_xy/s_xx2 the pure phenotype pair products.
    """

    s_axx: float
    s_axy: float
    s_a: float
    s_aa: float
    s_xx: float
    s_xy: float
    s_xx2: float
    n: int
    n_pairs: int


@dataclass(frozen=True)
class TsreFit:
    """Result of the two-slope ratio fit.

    eta_hat is the exposure-pair slope, delta_hat the cross-pair slope, and
    theta_hat = delta_hat / eta_hat.  tau2_hat is the plug-in asymptotic
    variance scale with se = sqrt(tau2_hat / n_pairs).
    """

    eta_hat: float
    delta_hat: float
    theta_hat: float
    se: float
    tau2_hat: float
    n: int
    m: int
    mode: str


def _check_inputs(a: Grm, x, y, min_n: int):
    x = np.ascontiguousarray(x, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    if x.shape != (a.n,) or y.shape != (a.n,):
        raise DataError(
            f"phenotype length mismatch: GRM has n={a.n}, exposure has "
            f"{x.shape[0]}, outcome has {y.shape[0]}"
        )
    if a.n < min_n:
        raise DataError(f"need at least {min_n} individuals, got {a.n}")
    return x, y


def pair_moments(a: Grm, x, y) -> PairMoments:
    """Accumulate the pair sums for a GRM and a phenotype pair.

    Phenotypes are used as given (no centering here).  The GRM sums stream
    over the packed strict lower triangle; the pure phenotype sums come from
    the identities sum_{i<j} x_i x_j = ((sum x)^2 - sum x^2)/2 and its
    relatives, so the cost is one pass over the triangle plus O(n) vector
    work.
    """
    x, y = _check_inputs(a, x, y, min_n=2)
    s_axx, s_axy, s_a, s_aa = kernels.pair_sums(a.lower_triangle, a.n, x, y)
    sx = float(np.sum(x))
    sy = float(np.sum(y))
    sx2 = float(x @ x)
    sy_x = float(x @ y)
    sx4 = float(np.sum(x**4))
    n = a.n
    return PairMoments(
        s_axx=s_axx,
        s_axy=s_axy,
        s_a=s_a,
        s_aa=s_aa,
        s_xx=(sx * sx - sx2) / 2.0,
        s_xy=(sx * sy - sy_x) / 2.0,
        s_xx2=(sx2 * sx2 - sx4) / 2.0,
        n=n,
        n_pairs=n * (n - 1) // 2,
    )


def _slopes(pm: PairMoments, mode: str) -> tuple[float, float, float, float]:
    """Return (numerator, denominator, slope scale, exposure-pair spread).

    The numerator/denominator are the pair sums whose ratio is theta_hat;
    the slope scale converts them into the reported regression slopes; the
    spread is the matching sum of squares of the regressor, used by the
    weak-signal guard.
    """
    if mode == "covariance":
        npairs = pm.n_pairs
        den = pm.s_axx - pm.s_a * pm.s_xx / npairs
        num = pm.s_axy - pm.s_a * pm.s_xy / npairs
        scale = pm.s_aa - pm.s_a**2 / npairs
        spread = pm.s_xx2 - pm.s_xx**2 / npairs
    elif mode == "raw":
        den = pm.s_axx
        num = pm.s_axy
        scale = pm.s_aa
        spread = pm.s_xx2
    else:
        raise DataError(f"unknown centering mode {mode!r}")
    return num, den, scale, spread


def _guard_denominator(den: float, scale: float, spread: float, min_signal: float):
    limit = min_signal * math.sqrt(max(scale, 0.0) * max(spread, 0.0))
    if abs(den) <= limit or den == 0.0:
        raise EstimationError(
            "weak genetic signal: exposure-pair regression denominator "
            f"{den:.6e} is below the guard threshold {limit:.6e}"
        )


def tsre_estimate(
    a: Grm, x, y, centering: str = "covariance", min_signal: float = MIN_SIGNAL
) -> TsreFit:
    """Fit the slope-ratio estimator on a GRM and phenotype pair.

    Both traits are mean-centered internally.  In "covariance" mode (the
    default) theta_hat is the ratio of the pair covariances of A with the
    cross and exposure products; "raw" mode uses uncentered pair sums, the
    normal-equation form.  min_signal is the correlation-scale threshold of
    the weak-denominator guard.
    """
    x, y = _check_inputs(a, x, y, min_n=3)
    xc = x - x.mean()
    yc = y - y.mean()
    pm = pair_moments(a, xc, yc)
    num, den, scale, spread = _slopes(pm, centering)
    _guard_denominator(den, scale, spread, min_signal)
    if scale <= 0:
        raise EstimationError("degenerate GRM: pair entries have no spread")
    theta = num / den
    tau2, se = _plugin_variance(pm, den, theta, xc, yc, a.m_effective)
    return TsreFit(
        eta_hat=den / scale,
        delta_hat=num / scale,
        theta_hat=theta,
        se=se,
        tau2_hat=tau2,
        n=a.n,
        m=a.m_effective,
        mode=centering,
    )


def _plugin_variance(pm, den, theta, xc, yc, m) -> tuple[float, float]:
    # The asymptotic variance scale is
    #   tau2 = Var(X) * Var(Y - theta X) / (m * cov(A, XX)^2)
    # with cov(A, XX) the per-pair average of the fitted denominator, i.e.
    # the genetic variance of X divided by m.
    cov_axx = den / pm.n_pairs
    var_x = float(np.var(xc, ddof=1))
    resid = yc - theta * xc
    var_r = float(np.var(resid, ddof=1))
    tau2 = var_x * var_r / (m * cov_axx**2)
    return tau2, math.sqrt(tau2 / pm.n_pairs)


def tsre_stderr(fit: TsreFit, a: Grm, x, y) -> float:
    """Recompute the plug-in standard error of a fit from the data.

    Returns the same value tsre_estimate stored in fit.se; exposed so the
    plug-in can be audited against an independently obtained point estimate.
    """
    x, y = _check_inputs(a, x, y, min_n=3)
    xc = x - x.mean()
    yc = y - y.mean()
    pm = pair_moments(a, xc, yc)
    _, den, scale, spread = _slopes(pm, fit.mode)
    _guard_denominator(den, scale, spread, MIN_SIGNAL)
    _, se = _plugin_variance(pm, den, fit.theta_hat, xc, yc, a.m_effective)
    return se


def moment_diagnostic(
    a: Grm, x, y, theta: float, centering: str = "covariance"
) -> tuple[float, float]:
    """Specification test of the pair moment condition at a candidate theta.

    Returns (mean, z) where mean is the average over pairs of the product of
    the (optionally centered) GRM entry and the pair residual
    e_ij = (X_i Y_j + Y_i X_j)/2 - theta * X_i X_j, and z is mean divided by
    the pair-sample standard error.  At the covariance-mode theta_hat the
    mean vanishes identically (the estimator's normal equation).
    """
    x, y = _check_inputs(a, x, y, min_n=2)
    xc = x - x.mean()
    yc = y - y.mean()
    pm = pair_moments(a, xc, yc)
    npairs = pm.n_pairs
    if centering == "covariance":
        a_bar = pm.s_a / npairs
        e_bar = (pm.s_xy - theta * pm.s_xx) / npairs
    elif centering == "raw":
        a_bar = 0.0
        e_bar = 0.0
    else:
        raise DataError(f"unknown centering mode {centering!r}")
    s_t, s_tt = kernels.diag_sums(
        a.lower_triangle, a.n, xc, yc, float(theta), a_bar, e_bar
    )
    mean = s_t / npairs
    var_t = (s_tt - npairs * mean * mean) / (npairs - 1) if npairs > 1 else 0.0
    if var_t <= 0:
        return mean, 0.0 if mean == 0.0 else math.copysign(math.inf, mean)
    z = mean / math.sqrt(var_t / npairs)
    return mean, z
