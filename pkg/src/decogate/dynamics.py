"""Exact averaged evolution vs the second-order phase-destroying equation.

The exact averaged map acts diagonally in the Hamiltonian eigenbasis (decay
and shift per energy gap); its second-order-in-tau truncation is the familiar
double-commutator master equation d rho/dt = -i[H, rho] - (tau/2)[H,[H, rho]],
integrated here with classical RK4.  compare_evolutions quantifies the
truncation error between the two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .decoherence import evolve_energy_basis
from .statemath import DensityMatrix, hermitian_eigen


@dataclass
class HamiltonianSpec:
    """Hermitian Hamiltonian in units of rad/s (hbar = 1)."""

    matrix: np.ndarray
    basis: list | None = None

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=complex)
        # eigendecomposition validates Hermiticity and is reused by exact_map
        self._eigvals, self._eigvecs = hermitian_eigen(self.matrix)

    @property
    def eigenvalues(self) -> np.ndarray:
        return self._eigvals

    @property
    def eigenvectors(self) -> np.ndarray:
        return self._eigvecs

    @property
    def spectral_norm(self) -> float:
        return float(np.max(np.abs(self._eigvals)))


@dataclass
class EvolutionComparison:
    times: list[float]
    trace_distance: list[float]
    max_offdiag_error: list[float] = field(default_factory=list)


class ConvergenceError(RuntimeError):
    """RK4 result changed by more than the tolerance when dt was halved."""


def exact_map(h: HamiltonianSpec, rho0: DensityMatrix, t: float, tau: float) -> DensityMatrix:
    """Exact averaged evolution: rotate to the eigenbasis, apply per-gap decay
    and shift factors, rotate back."""
    v = h.eigenvectors
    rho_eig = DensityMatrix(v.conj().T @ rho0.matrix @ v)
    evolved = evolve_energy_basis(rho_eig, h.eigenvalues, t, tau)
    return DensityMatrix(v @ evolved.matrix @ v.conj().T, basis=rho0.basis)


def default_dt(h: HamiltonianSpec, t: float) -> float:
    norm = h.spectral_norm
    if norm == 0:
        return t / 1000.0
    return min(1e-3 / norm, t / 1000.0)


def _rhs(hm: np.ndarray, rho: np.ndarray, tau: float) -> np.ndarray:
    comm = hm @ rho - rho @ hm
    return -1j * comm - 0.5 * tau * (hm @ comm - comm @ hm)


def _rk4_run(hm: np.ndarray, rho: np.ndarray, t: float, tau: float, dt: float) -> np.ndarray:
    n_steps = max(1, math.ceil(t / dt))
    step = t / n_steps
    for _ in range(n_steps):
        k1 = _rhs(hm, rho, tau)
        k2 = _rhs(hm, rho + 0.5 * step * k1, tau)
        k3 = _rhs(hm, rho + 0.5 * step * k2, tau)
        k4 = _rhs(hm, rho + step * k3, tau)
        rho = rho + (step / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        rho = 0.5 * (rho + rho.conj().T)
    return rho


def me2_integrate(
    h: HamiltonianSpec,
    rho0: DensityMatrix,
    t: float,
    tau: float,
    dt: float | None = None,
    check_convergence: bool = False,
) -> DensityMatrix:
    """RK4 integration of the second-order phase-destroying master equation.

    Hermiticity is enforced by symmetrization each step.  With
    check_convergence=True the run is repeated at dt/2 and a ConvergenceError
    is raised if the result moves by more than 1e-8 entrywise.
    """
    if dt is None:
        dt = default_dt(h, t)
    if dt <= 0 or dt > t:
        raise ValueError("require 0 < dt <= t")
    if t == 0:
        return DensityMatrix(rho0.matrix.copy(), basis=rho0.basis)
    rho = _rk4_run(h.matrix, rho0.matrix.astype(complex), t, tau, dt)
    if check_convergence:
        rho_half = _rk4_run(h.matrix, rho0.matrix.astype(complex), t, tau, dt / 2)
        delta = float(np.max(np.abs(rho - rho_half)))
        if delta > 1e-8:
            raise ConvergenceError(
                f"halving dt changed the result by {delta:.3e} > 1e-8; reduce dt"
            )
    return DensityMatrix(rho, basis=rho0.basis)


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    w = np.linalg.eigvalsh(0.5 * ((a - b) + (a - b).conj().T))
    return 0.5 * float(np.sum(np.abs(w)))


def compare_evolutions(
    h: HamiltonianSpec,
    rho0: DensityMatrix,
    t_grid,
    tau: float,
    dt: float | None = None,
) -> EvolutionComparison:
    """Per-time trace distance and max off-diagonal deviation between the
    exact averaged map and the second-order truncation."""
    t_grid = list(t_grid)
    if any(t <= 0 for t in t_grid) or any(
        t_grid[k] >= t_grid[k + 1] for k in range(len(t_grid) - 1)
    ):
        raise ValueError("t_grid must be ascending and positive")
    if dt is None:
        dt = default_dt(h, t_grid[-1])
    hm = h.matrix
    offdiag_mask = ~np.eye(rho0.dim, dtype=bool)
    dists, offs = [], []
    rho_me2 = rho0.matrix.astype(complex)
    t_prev = 0.0
    for t in t_grid:
        rho_me2 = _rk4_run(hm, rho_me2, t - t_prev, tau, dt)
        t_prev = t
        rho_exact = exact_map(h, rho0, t, tau).matrix
        delta = rho_exact - rho_me2
        dists.append(trace_distance(rho_exact, rho_me2))
        offs.append(float(np.max(np.abs(delta[offdiag_mask]))) if rho0.dim > 1 else 0.0)
    return EvolutionComparison(times=t_grid, trace_distance=dists, max_offdiag_error=offs)
