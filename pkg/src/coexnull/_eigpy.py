"""Pure numpy power-iteration kernel (fallback for the compiled core).

Semantics are identical to coexnull._eigcore.power_iteration: iterate on
the diagonally shifted matrix and stop on the Rayleigh-quotient residual
of the *unshifted* matrix.  The two backends must stay interchangeable;
any change here has to be mirrored in the .pyx kernel.
"""

import numpy as np


def power_iteration(q, shift, v0, tol, max_iter):
    """Run shifted power iteration on a Hermitian matrix.

    Parameters
    ----------
    q : (n, n) complex128 ndarray, Hermitian (not validated here)
    shift : float
        Diagonal shift, large enough that q + shift*I is positive
        semidefinite so the iteration orders eigenvalues algebraically.
    v0 : (n,) complex128 ndarray, nonzero start vector
    tol : float
        Relative residual target: ||q v - mu v|| <= tol * max(1, |mu|).
    max_iter : int

    Returns
    -------
    (v, mu, residual, iterations, converged)
        v is the last evaluated unit-norm iterate and mu its Rayleigh
        quotient with respect to the unshifted matrix.
    """
    v = v0 / np.linalg.norm(v0)
    mu = 0.0
    res = np.inf
    it = 0
    for it in range(1, max_iter + 1):
        y = q @ v + shift * v
        mu_shifted = np.vdot(v, y).real
        res = np.linalg.norm(y - mu_shifted * v)
        mu = mu_shifted - shift
        if res <= tol * max(1.0, abs(mu)):
            return v, mu, res, it, True
        ny = np.linalg.norm(y)
        if ny == 0.0:
            # v sits exactly in the kernel of the shifted matrix; a fresh
            # start vector is the only way forward.
            return v, mu, res, it, False
        v = y / ny
    # Exhausted the budget: score the final iterate once so the caller
    # gets an honest residual for what is returned.
    y = q @ v + shift * v
    mu_shifted = np.vdot(v, y).real
    res = np.linalg.norm(y - mu_shifted * v)
    mu = mu_shifted - shift
    return v, mu, res, max_iter, bool(res <= tol * max(1.0, abs(mu)))
