# cython: boundscheck=False, wraparound=False, cdivision=True
# Compiled kernels for packed lower-triangle reductions.  Semantics match
# tsre.kernels._py; see that module for the packed layout convention.


def pair_sums(double[::1] tri, Py_ssize_t n, double[::1] x, double[::1] y):
    cdef Py_ssize_t i, j, off
    cdef double a, s_a = 0.0, s_aa = 0.0, s_axx = 0.0, s_axy = 0.0
    with nogil:
        for i in range(1, n):
            off = i * (i + 1) // 2
            for j in range(i):
                a = tri[off + j]
                s_a += a
                s_aa += a * a
                s_axx += a * x[i] * x[j]
                s_axy += 0.5 * a * (x[i] * y[j] + y[i] * x[j])
    return s_axx, s_axy, s_a, s_aa


def diag_sums(double[::1] tri, Py_ssize_t n, double[::1] x, double[::1] y,
              double theta, double a_bar, double e_bar):
    cdef Py_ssize_t i, j, off
    cdef double e, t, s_t = 0.0, s_tt = 0.0
    with nogil:
        for i in range(1, n):
            off = i * (i + 1) // 2
            for j in range(i):
                e = 0.5 * (x[i] * y[j] + y[i] * x[j]) - theta * x[i] * x[j]
                t = (tri[off + j] - a_bar) * (e - e_bar)
                s_t += t
                s_tt += t * t
    return s_t, s_tt
