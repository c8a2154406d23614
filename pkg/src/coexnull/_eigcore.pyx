# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled power-iteration kernel.

Same contract as coexnull._eigpy.power_iteration, with the iteration loop
run without the GIL on top of BLAS level-2 calls.  The matrix-vector
product uses zgemv with trans='T' on the row-major buffer (the BLAS
column-major view of a row-major array is its transpose), which computes
one contiguous dot product per output element and is therefore
deterministic under any BLAS thread split.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt
from scipy.linalg.cython_blas cimport zaxpy, zcopy, zdotc, zgemv, zdscal, dznrm2

cnp.import_array()


def power_iteration(cnp.complex128_t[:, ::1] q, double shift,
                    cnp.complex128_t[::1] v0, double tol, int max_iter):
    """Shifted power iteration; see the numpy twin for parameter docs."""
    cdef int n = q.shape[0]
    cdef int inc = 1
    cdef double complex one = 1.0
    cdef double complex zero = 0.0
    cdef double complex zshift = shift
    cdef double complex neg_mu
    cdef double mu_shifted, mu = 0.0, res = 0.0, ny, scale
    cdef int it = 0
    cdef bint converged = False
    cdef char trans = b'T'

    if q.shape[1] != n or v0.shape[0] != n or n < 1:
        raise ValueError("kernel requires square q and matching v0")

    v_arr = np.array(v0, dtype=np.complex128, copy=True)
    y_arr = np.empty(n, dtype=np.complex128)
    w_arr = np.empty(n, dtype=np.complex128)
    cdef cnp.complex128_t[::1] v = v_arr
    cdef cnp.complex128_t[::1] y = y_arr
    cdef cnp.complex128_t[::1] w = w_arr
    cdef cnp.complex128_t* qp = &q[0, 0]
    cdef cnp.complex128_t* vp = &v[0]
    cdef cnp.complex128_t* yp = &y[0]
    cdef cnp.complex128_t* wp = &w[0]

    with nogil:
        ny = dznrm2(&n, vp, &inc)
        if ny > 0.0:
            scale = 1.0 / ny
            zdscal(&n, &scale, vp, &inc)
        for it in range(1, max_iter + 1):
            # y = q v + shift v
            zgemv(&trans, &n, &n, &one, qp, &n, vp, &inc, &zero, yp, &inc)
            zaxpy(&n, &zshift, vp, &inc, yp, &inc)
            mu_shifted = zdotc(&n, vp, &inc, yp, &inc).real
            # w = y - mu_shifted v; residual of the unshifted problem
            zcopy(&n, yp, &inc, wp, &inc)
            neg_mu = -mu_shifted
            zaxpy(&n, &neg_mu, vp, &inc, wp, &inc)
            res = dznrm2(&n, wp, &inc)
            mu = mu_shifted - shift
            if res <= tol * (1.0 if fabs(mu) < 1.0 else fabs(mu)):
                converged = True
                break
            ny = dznrm2(&n, yp, &inc)
            if ny == 0.0:
                break
            scale = 1.0 / ny
            zcopy(&n, yp, &inc, vp, &inc)
            zdscal(&n, &scale, vp, &inc)
        else:
            # budget exhausted after a final update: score the returned vector
            zgemv(&trans, &n, &n, &one, qp, &n, vp, &inc, &zero, yp, &inc)
            zaxpy(&n, &zshift, vp, &inc, yp, &inc)
            mu_shifted = zdotc(&n, vp, &inc, yp, &inc).real
            zcopy(&n, yp, &inc, wp, &inc)
            neg_mu = -mu_shifted
            zaxpy(&n, &neg_mu, vp, &inc, wp, &inc)
            res = dznrm2(&n, wp, &inc)
            mu = mu_shifted - shift
            it = max_iter
            converged = res <= tol * (1.0 if fabs(mu) < 1.0 else fabs(mu))

    return v_arr, mu, res, it, bool(converged)
