"""Complex vectors, Hermitian matrices, and the principal-eigenpair solver.

Vectors are plain 1-D complex128 ndarrays and Hermitian matrices are
square complex128 ndarrays validated by :func:`as_hermitian`; there is no
wrapper class.  All functions are pure and never mutate their arguments,
so values can be shared freely across threads.

The eigensolver targets the algebraically largest eigenvalue, not the
largest in magnitude: the null-steering objective matrix is indefinite
with large negative eigenvalues, and plain power iteration would lock on
to those.  It therefore iterates on ``Q + sigma*I`` where sigma is the
Gershgorin row-sum bound on the spectral radius, which makes the shifted
matrix positive semidefinite while preserving the algebraic ordering.
The iteration loop lives in a compiled Cython kernel
(:mod:`coexnull._eigcore`) with a numpy twin (:mod:`coexnull._eigpy`)
selected at import; set ``COEXIST_NULL_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os
from typing import NamedTuple

import numpy as np

from . import _eigpy

_KERNELS = {"python": _eigpy.power_iteration}
if not os.environ.get("COEXIST_NULL_PURE"):
    try:
        from . import _eigcore

        _KERNELS["compiled"] = _eigcore.power_iteration
    except ImportError:
        pass

_ACTIVE_KERNEL = "compiled" if "compiled" in _KERNELS else "python"

# Fixed seeds for the deterministic pseudo-random start vectors; the
# restart seed must differ so a pathological first start is not repeated.
_START_SEED = 0x5EED_0001
_RESTART_SEED = 0x5EED_0002

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 10_000


def eig_backend() -> str:
    """Name of the active power-iteration kernel ('compiled' or 'python')."""
    return _ACTIVE_KERNEL


def power_iteration_backends() -> dict:
    """All available kernels keyed by name (used by the benchmark)."""
    return dict(_KERNELS)


def as_complex_vector(entries) -> np.ndarray:
    """Coerce to a 1-D complex128 ndarray with at least one entry."""
    v = np.asarray(entries, dtype=np.complex128)
    if v.ndim != 1 or v.size == 0:
        raise ValueError(f"expected a nonempty 1-D vector, got shape {v.shape}")
    return v


def as_hermitian(entries) -> np.ndarray:
    """Coerce to a square complex128 ndarray and require exact Hermitian symmetry.

    Entry (j, k) must equal the conjugate of entry (k, j) bit-for-bit.
    Sums of outer products ``w * v v^H`` with real weights satisfy this
    exactly in IEEE arithmetic, so matrices built through
    :func:`outer_accumulate` always pass.
    """
    q = np.asarray(entries, dtype=np.complex128)
    if q.ndim != 2 or q.shape[0] != q.shape[1] or q.shape[0] == 0:
        raise ValueError(f"expected a square matrix of dim >= 1, got shape {q.shape}")
    if not np.array_equal(q, q.conj().T):
        raise ValueError("matrix is not Hermitian (entry (j,k) != conj(entry (k,j)))")
    return np.ascontiguousarray(q)


def hermitian_zeros(dim: int) -> np.ndarray:
    if dim < 1:
        raise ValueError("dim must be >= 1")
    return np.zeros((dim, dim), dtype=np.complex128)


def inner_product(a, b) -> complex:
    """Hermitian inner product with conjugation on the FIRST argument.

    ``inner_product(w, h)`` realizes the beamformer response w^H h; the
    self inner product is the squared norm.
    """
    a = as_complex_vector(a)
    b = as_complex_vector(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return complex(np.vdot(a, b))


def outer_accumulate(acc, v, weight: float) -> np.ndarray:
    """Return ``acc + weight * v v^H`` (Hermitian for real weight).

    Pure: a new matrix is returned, ``acc`` is untouched.
    """
    acc = np.asarray(acc, dtype=np.complex128)
    v = as_complex_vector(v)
    if acc.shape != (v.size, v.size):
        raise ValueError(f"dimension mismatch: acc {acc.shape} vs vector dim {v.size}")
    w = complex(weight)
    if w.imag != 0.0:
        raise ValueError("weight must be real to preserve Hermitian symmetry")
    return acc + w.real * np.outer(v, v.conj())


class EigenResult(NamedTuple):
    """Principal eigenpair plus solver diagnostics."""

    vector: np.ndarray
    eigenvalue: float
    residual: float
    iterations: int
    converged: bool


def _random_unit_vector(dim: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def _fix_phase(v: np.ndarray) -> np.ndarray:
    """Rotate so the largest-magnitude entry is real and nonnegative."""
    k = int(np.argmax(np.abs(v)))
    pivot = v[k]
    mag = abs(pivot)
    if mag == 0.0:
        return v
    return v * (pivot.conjugate() / mag)


def gershgorin_bound(q: np.ndarray) -> float:
    """Row-sum upper bound on the spectral radius of a square matrix."""
    return float(np.abs(q).sum(axis=1).max())


def principal_eigenvector(
    q,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> EigenResult:
    """Unit eigenvector of the algebraically largest eigenvalue of Hermitian q.

    Returns an :class:`EigenResult`; ``converged`` is False when the
    residual target ``||q v - mu v|| <= tol * max(1, |mu|)`` was not met
    after ``max_iter`` iterations and one restart from a second seeded
    start vector.  That signals a (near-)degenerate top eigenspace, in
    which case the returned iterate is still a valid member of it.

    The phase convention makes the output deterministic: the entry with
    the largest magnitude is rotated to be real and nonnegative.
    """
    q = as_hermitian(q)
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    sigma = gershgorin_bound(q)
    kernel = _KERNELS[_ACTIVE_KERNEL]
    n = q.shape[0]
    v, mu, res, its, ok = kernel(q, sigma, _random_unit_vector(n, _START_SEED), tol, max_iter)
    if not ok:
        v, mu, res, its2, ok = kernel(
            q, sigma, _random_unit_vector(n, _RESTART_SEED), tol, max_iter
        )
        its += its2
    return EigenResult(_fix_phase(v), float(mu), float(res), int(its), bool(ok))
