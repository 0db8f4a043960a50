"""Pure-NumPy reference kernels for packed lower-triangle reductions.

Row i of a packed lower triangle (diagonal included, row-major) occupies
slots [i(i+1)/2, i(i+1)/2 + i]; the strict-lower part of the row is the
first i entries of that slice.  All reductions below run over strict-lower
entries only and never materialise the pair-level design.
"""

import numpy as np


def pair_sums(tri, n, x, y):
    """Sums of A_ij, A_ij^2, A_ij*x_i*x_j and symmetrised A_ij*x_i*y_j
    over all pairs i > j of a packed lower triangle."""
    s_a = 0.0
    s_aa = 0.0
    s_axx = 0.0
    s_axy = 0.0
    for i in range(1, n):
        off = i * (i + 1) // 2
        row = tri[off:off + i]
        xj = x[:i]
        yj = y[:i]
        s_a += row.sum()
        s_aa += row @ row
        s_axx += x[i] * (row @ xj)
        s_axy += 0.5 * (x[i] * (row @ yj) + y[i] * (row @ xj))
    return s_axx, s_axy, s_a, s_aa


def diag_sums(tri, n, x, y, theta, a_bar, e_bar):
    """First and second moments of t_ij = (A_ij - a_bar)*(e_ij - e_bar)
    where e_ij = (x_i*y_j + y_i*x_j)/2 - theta*x_i*x_j."""
    s_t = 0.0
    s_tt = 0.0
    for i in range(1, n):
        off = i * (i + 1) // 2
        row = tri[off:off + i]
        e = 0.5 * (x[i] * y[:i] + y[i] * x[:i]) - theta * x[i] * x[:i]
        t = (row - a_bar) * (e - e_bar)
        s_t += t.sum()
        s_tt += t @ t
    return s_t, s_tt
