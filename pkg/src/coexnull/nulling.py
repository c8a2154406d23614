"""Regularized null-steering beamformer and the link metrics it trades off.

The beamformer maximizes |w^H h0_n|^2 - lambda * sum_i |w^H hhat_i|^2
over unit-norm w, where h0_n is the normalized channel of the served
user and hhat_i are the (possibly estimated) channels of the detected
victims.  The maximizer is the principal eigenvector of the Hermitian
matrix Q = h0_n h0_n^H - lambda * sum_i hhat_i hhat_i^H, which is solved
exactly (Rayleigh-Ritz optimality) rather than by any iterative ascent:
exactness is what makes the lambda-monotonicity of both objective terms
hold to solver precision.

The lambda -> infinity limit is a separate code path: an orthogonal
projection of h0_n onto the complement of the victim span.  Driving the
eigensolver with a huge lambda would merely condition Q badly.

Victim channels enter unnormalized on purpose: a victim with a weaker
channel contributes a proportionally smaller penalty term, so distant
victims naturally matter less.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .channel import LinkBudget
from .linalg import as_complex_vector

# Victim directions whose orthogonalized residual falls below this factor
# of their norm are collapsed into the span already accumulated.
RANK_TOL = 1e-10


class InfeasibleNullError(ValueError):
    """Raised when a hard null cannot be realized (no free dimensions left)."""


@dataclass(frozen=True)
class NullingConfig:
    """Solver mode: either a finite penalty weight or the hard-null limit."""

    lam: float = None
    hard_null: bool = False
    tol: float = linalg.DEFAULT_TOL
    max_iter: int = linalg.DEFAULT_MAX_ITER

    def __post_init__(self):
        if self.hard_null:
            if self.lam is not None:
                raise ValueError("hard_null excludes a finite lam")
        else:
            if self.lam is None:
                raise ValueError("either lam or hard_null must be set")
            if math.isinf(self.lam):
                raise ValueError("use hard_null=True for the infinite-penalty mode")
            if self.lam < 0.0:
                raise ValueError("lam must be >= 0")
        if self.tol <= 0.0 or self.max_iter < 1:
            raise ValueError("tol must be > 0 and max_iter >= 1")


@dataclass(frozen=True)
class Beamformer:
    """Unit-norm transmit weights and the objective value they attain.

    For hard null, attained_objective is the retained signal power
    |w^H h0_n|^2 (the penalty term is exactly zero by construction).
    """

    w: np.ndarray
    attained_objective: float
    converged: bool = True
    iterations: int = 0

    def __post_init__(self):
        object.__setattr__(self, "w", as_complex_vector(self.w))


def build_q(h0, victims, lam: float) -> np.ndarray:
    """Assemble the Hermitian objective matrix from channels and penalty."""
    h0 = as_complex_vector(h0)
    norm0 = np.linalg.norm(h0)
    if norm0 == 0.0:
        raise ValueError("desired channel must be nonzero")
    if lam < 0.0:
        raise ValueError("lam must be >= 0")
    h0n = h0 / norm0
    q = linalg.outer_accumulate(linalg.hermitian_zeros(h0.size), h0n, 1.0)
    for h in victims:
        q = linalg.outer_accumulate(q, h, -lam)
    return q


def _orthonormal_victim_basis(victims, dim: int) -> np.ndarray:
    """Modified Gram-Schmidt with re-orthogonalization and rank tolerance.

    Colinear or duplicate victims collapse onto one basis direction
    instead of inflating the null-space requirement.
    """
    basis = []
    for h in victims:
        h = as_complex_vector(h)
        if h.size != dim:
            raise ValueError("victim channel dimension mismatch")
        norm_h = np.linalg.norm(h)
        if norm_h == 0.0:
            continue
        u = h.copy()
        for _ in range(2):
            for b in basis:
                u = u - np.vdot(b, u) * b
        res = np.linalg.norm(u)
        if res > RANK_TOL * norm_h:
            basis.append(u / res)
    if basis:
        return np.column_stack(basis)
    return np.zeros((dim, 0), dtype=np.complex128)


def solve_beamformer(h0, victims, cfg: NullingConfig) -> Beamformer:
    """Optimal unit-norm beamformer for the given channels and penalty mode."""
    h0 = as_complex_vector(h0)
    victims = [as_complex_vector(v) for v in victims]
    for v in victims:
        if v.size != h0.size:
            raise ValueError("victim channel dimension mismatch")
    norm0 = np.linalg.norm(h0)
    if norm0 == 0.0:
        raise ValueError("desired channel must be nonzero")
    h0n = h0 / norm0

    if cfg.hard_null:
        if len(victims) >= h0.size:
            raise InfeasibleNullError(
                f"hard null of {len(victims)} victims needs more than {h0.size} antennas"
            )
        basis = _orthonormal_victim_basis(victims, h0.size)
        w = h0n - basis @ (basis.conj().T @ h0n)
        w = w - basis @ (basis.conj().T @ w)
        norm_w = np.linalg.norm(w)
        if norm_w <= 1e-10:
            raise InfeasibleNullError("desired channel lies in the victim span")
        w = w / norm_w
        signal = float(abs(np.vdot(w, h0n)) ** 2)
        return Beamformer(w=w, attained_objective=signal)

    q = build_q(h0, victims, cfg.lam)
    eig = linalg.principal_eigenvector(q, tol=cfg.tol, max_iter=cfg.max_iter)
    return Beamformer(
        w=eig.vector,
        attained_objective=eig.eigenvalue,
        converged=eig.converged,
        iterations=eig.iterations,
    )


def snr0(bf: Beamformer, h0, budget: LinkBudget) -> float:
    """Downlink SNR at the served user (linear), E_D |w^H h0|^2 / N0."""
    h0 = as_complex_vector(h0)
    gain = abs(np.vdot(bf.w, h0)) ** 2
    return budget.energy_dl_j * gain / budget.noise_energy_ue_j


def inr(bf: Beamformer, h_victim, budget: LinkBudget) -> float:
    """Interference-to-noise ratio at one victim (linear).

    Scored against the victim's TRUE channel even when the null was
    placed on an estimate; that residual is exactly the quantity the
    simulator studies.
    """
    h_victim = as_complex_vector(h_victim)
    leak = abs(np.vdot(bf.w, h_victim)) ** 2
    return budget.energy_dl_j * leak / budget.noise_energy_victim_j
