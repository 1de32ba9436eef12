import math

import numpy as np
import pytest

from decogate.decoherence import averaged_phase_factor
from decogate.dynamics import (
    ConvergenceError,
    HamiltonianSpec,
    compare_evolutions,
    default_dt,
    exact_map,
    me2_integrate,
    trace_distance,
)
from decogate.fidelity import f0000_one_bit
from decogate.gates import GateContext
from decogate.statemath import DensityMatrix, validate_density


OMEGA = 1e5
H_RABI = HamiltonianSpec(0.5 * OMEGA * np.array([[0.0, 1.0], [1.0, 0.0]]))
RHO_G = DensityMatrix(np.diag([1.0, 0.0]).astype(complex))


def test_hamiltonian_spec_rejects_non_hermitian():
    with pytest.raises(ValueError):
        HamiltonianSpec(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_exact_map_matches_phase_factor_law():
    # in the eigenbasis the coherence picks up the averaged phase factor
    t, tau = 1e-4, 1e-7
    w = H_RABI.eigenvalues
    rho = exact_map(H_RABI, RHO_G, t, tau)
    v = H_RABI.eigenvectors
    rho_eig = v.conj().T @ rho.matrix @ v
    rho0_eig = v.conj().T @ RHO_G.matrix @ v
    factor = averaged_phase_factor(w[1] - w[0], t, tau).conjugate()
    assert rho_eig[0, 1] == pytest.approx(rho0_eig[0, 1] * factor, rel=1e-12)
    assert np.abs(np.diag(rho_eig) - np.diag(rho0_eig)).max() < 1e-14


def test_exact_map_excited_population_equals_fidelity_complement():
    # qubit pi rotation at Omega*tau = 1e-3: the surviving ground population
    # equals the closed-form diagonal fidelity tensor element
    ctx = GateContext(omega=OMEGA, eta=0.1, n_ions=20, tau=1e-8)
    t = math.pi / OMEGA
    rho = exact_map(H_RABI, RHO_G, t, ctx.tau)
    # ideal pi pulse sends |g> to |e>; the averaged excited population is F0000
    assert rho.matrix[1, 1].real == pytest.approx(f0000_one_bit(t, ctx), abs=1e-12)


def test_exact_map_unitary_limit():
    t = 1e-5
    rho = exact_map(H_RABI, RHO_G, t, 0.0)
    u = H_RABI.eigenvectors @ np.diag(
        np.exp(-1j * H_RABI.eigenvalues * t)
    ) @ H_RABI.eigenvectors.conj().T
    ref = u @ RHO_G.matrix @ u.conj().T
    assert np.abs(rho.matrix - ref).max() < 1e-12


def test_me2_preserves_trace_and_hermiticity():
    rho = me2_integrate(H_RABI, RHO_G, math.pi / OMEGA, 1e-8)
    report = validate_density(rho)
    assert report.trace_error < 1e-10
    assert report.hermiticity_error < 1e-12


def test_me2_matches_exact_at_small_tau():
    t = math.pi / OMEGA
    tau = 1e-8  # Omega*tau = 1e-3
    exact = exact_map(H_RABI, RHO_G, t, tau)
    approx = me2_integrate(H_RABI, RHO_G, t, tau)
    assert trace_distance(exact.matrix, approx.matrix) < 1e-5


def test_me2_breaks_down_at_large_tau():
    t = math.pi / OMEGA
    tau = 1e-6  # Omega*tau = 1e-1
    exact = exact_map(H_RABI, RHO_G, t, tau)
    approx = me2_integrate(H_RABI, RHO_G, t, tau)
    assert trace_distance(exact.matrix, approx.matrix) > 1e-3


def test_me2_convergence_check():
    t = math.pi / OMEGA
    # default dt passes the halving test
    me2_integrate(H_RABI, RHO_G, t, 1e-8, check_convergence=True)
    # an absurdly coarse dt does not
    with pytest.raises(ConvergenceError):
        me2_integrate(H_RABI, RHO_G, t, 1e-6, dt=t / 3, check_convergence=True)


def test_me2_rejects_bad_dt():
    with pytest.raises(ValueError):
        me2_integrate(H_RABI, RHO_G, 1e-5, 1e-8, dt=0.0)
    with pytest.raises(ValueError):
        me2_integrate(H_RABI, RHO_G, 1e-5, 1e-8, dt=1.0)


def test_default_dt_resolves_spectral_norm():
    dt = default_dt(H_RABI, math.pi / OMEGA)
    assert dt * H_RABI.spectral_norm <= 1e-3 + 1e-15


def test_trace_distance_basics():
    a = np.diag([1.0, 0.0]).astype(complex)
    b = np.diag([0.0, 1.0]).astype(complex)
    assert trace_distance(a, a) == pytest.approx(0.0, abs=1e-15)
    assert trace_distance(a, b) == pytest.approx(1.0, abs=1e-12)


def test_compare_evolutions_grid():
    t_grid = list(np.linspace(1e-6, math.pi / OMEGA, 8))
    cmp = compare_evolutions(H_RABI, RHO_G, t_grid, 1e-8)
    assert len(cmp.times) == len(cmp.trace_distance) == len(cmp.max_offdiag_error) == 8
    assert all(d >= 0 for d in cmp.trace_distance)
    assert max(cmp.trace_distance) < 1e-5


def test_commuting_initial_state_is_stationary():
    # rho0 diagonal in the energy eigenbasis: both evolutions leave it fixed
    v0 = H_RABI.eigenvectors[:, 0]
    rho0 = DensityMatrix(np.outer(v0, v0.conj()))
    t = math.pi / OMEGA
    exact = exact_map(H_RABI, rho0, t, 1e-7)
    approx = me2_integrate(H_RABI, rho0, t, 1e-7)
    assert trace_distance(exact.matrix, rho0.matrix) < 1e-12
    assert trace_distance(approx.matrix, rho0.matrix) < 1e-10
