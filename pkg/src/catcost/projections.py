"""Convex feasibility engine for intersections of matrix constraint sets.

Product-space Douglas-Rachford splitting over a list of projections onto
closed convex sets of Hermitian matrices.  Iterates are kept exactly on
the Hermitian subspace: the affine-projection formulas are only
orthogonal there, and anti-Hermitian rounding noise is otherwise
amplified by the reflections.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .operators import hermitian_part

Projection = Callable[[np.ndarray], np.ndarray]
ResidualFn = Callable[[np.ndarray], dict[str, float]]


def project_psd(m: np.ndarray) -> np.ndarray:
    """Nearest positive-semidefinite matrix in Frobenius norm."""
    w, v = np.linalg.eigh(hermitian_part(m))
    return hermitian_part((v * np.clip(w, 0.0, None)) @ v.conj().T)


def random_density_matrix(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Ginibre-ensemble density matrix, optionally rank-deficient."""
    cols = dim if rank is None else rank
    g = rng.standard_normal((dim, cols)) + 1j * rng.standard_normal((dim, cols))
    m = g @ g.conj().T
    return m / np.trace(m).real


@dataclass
class FeasibilityResult:
    """Outcome of a feasibility solve.

    ``best_history`` records the best-so-far maximum residual at every
    check, so the reported series is non-increasing by construction.
    """

    point: np.ndarray
    converged: bool
    stalled: bool
    iterations: int
    residuals: dict[str, float]
    best_history: list[float] = field(default_factory=list)

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())


def solve_feasibility(
    projections: list[Projection],
    start: np.ndarray,
    residual_fn: ResidualFn,
    readout: Projection = project_psd,
    tol: float = 1e-6,
    max_iter: int = 20000,
    check_every: int = 10,
    stall_window: int = 500,
    stall_rtol: float = 1e-9,
) -> FeasibilityResult:
    """Run product-space Douglas-Rachford until the readout satisfies all residuals.

    The governing sequence holds one matrix per constraint set; each cycle
    reflects their average through every set.  ``readout`` maps the
    average to the candidate point whose residuals are measured.  A stall
    (no relative improvement of the best maximum residual over
    ``stall_window`` cycles) stops the run early; infeasible problems end
    up here.
    """
    y = [hermitian_part(start).copy() for _ in projections]
    k = len(projections)
    best_point = readout(hermitian_part(start))
    best_res = residual_fn(best_point)
    best_max = max(best_res.values())
    history = [best_max]
    last_improvement = 0
    it = 0
    while it < max_iter:
        it += 1
        avg = hermitian_part(sum(y) / k)
        for i, proj in enumerate(projections):
            y[i] = hermitian_part(y[i] + proj(hermitian_part(2.0 * avg - y[i])) - avg)
        if it % check_every and it != max_iter:
            continue
        candidate = readout(hermitian_part(sum(y) / k))
        res = residual_fn(candidate)
        res_max = max(res.values())
        if res_max < best_max * (1.0 - stall_rtol):
            last_improvement = it
        if res_max < best_max:
            best_point, best_res, best_max = candidate, res, res_max
        history.append(best_max)
        if best_max <= tol:
            return FeasibilityResult(best_point, True, False, it, best_res, history)
        if it - last_improvement >= stall_window:
            return FeasibilityResult(best_point, False, True, it, best_res, history)
    return FeasibilityResult(best_point, False, False, max_iter, best_res, history)
