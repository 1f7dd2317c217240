"""Null-space steady states and RK4 time evolution."""

import numpy as np
import pytest

from conftest import random_params, random_state

from eit3.model import Configuration, Liouvillian, SystemParams, build_liouvillian, vectorize
from eit3.presets import reference_params
from eit3.steady import (
    DegenerateNullSpaceError,
    SingularSolveError,
    StepTooLargeError,
    evolve,
    is_density_matrix,
    null_space_dimension,
    steady_state,
)


def test_lambda_resonance_traps_population_in_ground():
    L = build_liouvillian(reference_params("lambda"))
    rho = steady_state(L)
    assert rho[2, 2].real >= 0.99
    assert rho[1, 1].real <= 0.01
    assert abs(rho[0, 0]) <= 1e-10  # rho_33 carries a Delta^2 factor


def test_degenerate_when_undriven():
    p = SystemParams(Configuration.LAMBDA, g_probe=0.0, g_pump=0.0,
                     gamma_a=0.1, gamma_b=6.0)
    with pytest.raises(DegenerateNullSpaceError):
        steady_state(build_liouvillian(p))


def test_residual_and_validity_across_params(rng, config):
    for _ in range(15):
        p = random_params(rng, config)
        L = build_liouvillian(p)
        rho = steady_state(L)
        residual = np.abs(L.matrix @ vectorize(rho)).max()
        assert residual <= 1e-10 * np.abs(L.matrix).max()
        assert is_density_matrix(rho)


def test_null_space_dimensions():
    assert null_space_dimension(build_liouvillian(reference_params("lambda"))) == 1
    assert null_space_dimension(build_liouvillian(reference_params("vee"))) == 1
    zero = Liouvillian(matrix=np.zeros((9, 9), dtype=complex), rate_scale=0.0)
    assert null_space_dimension(zero) == 9


def test_singular_solve_guard():
    # a rank-8 "Liouvillian" whose null vector is traceless: the null-space
    # probe sees one null direction, but the trace constraint cannot pin it
    x = vectorize(np.diag([1.0, -1.0, 0.0]).astype(complex))
    x = x / np.linalg.norm(x)
    M = np.eye(9, dtype=complex) - np.outer(x, x.conj())
    with pytest.raises((SingularSolveError, DegenerateNullSpaceError)) as err:
        steady_state(Liouvillian(matrix=M, rate_scale=1.0))
    assert isinstance(err.value, SingularSolveError)


def test_evolve_reaches_steady_state_from_any_start(rng):
    # t_end = 50 / Gamma_min with the steady-state solver as oracle
    p = reference_params("lambda")
    L = build_liouvillian(p)
    target = steady_state(L)
    t_end = 50.0 / min(p.gamma_a, p.gamma_b)
    for rho0 in (np.eye(3, dtype=complex) / 3, random_state(rng)):
        traj = evolve(L, rho0, t_end=t_end, dt_max=0.1 / p.rate_scale)
        assert np.abs(traj.final - target).max() <= 1e-6
        assert is_density_matrix(traj.final)


@pytest.mark.parametrize("tag,t_end", [("cascade", 50.0 / 0.49), ("vee", 50.0 / 6.0)])
def test_evolve_converges_other_configs(tag, t_end):
    p = reference_params(tag)
    L = build_liouvillian(p)
    traj = evolve(L, np.eye(3, dtype=complex) / 3, t_end=t_end,
                  dt_max=0.1 / p.rate_scale)
    assert np.abs(traj.final - steady_state(L)).max() <= 1e-6


def test_evolve_from_steady_state_is_idempotent():
    p = reference_params("vee", delta_probe=3.0)
    L = build_liouvillian(p)
    rho_s = steady_state(L)
    traj = evolve(L, rho_s, t_end=20.0, dt_max=0.1 / p.rate_scale)
    for state in traj.states:
        assert np.abs(state - rho_s).max() <= 1e-8


def test_trace_conserved_along_trajectory():
    p = reference_params("lambda", delta_probe=2.0)
    L = build_liouvillian(p)
    traj = evolve(L, np.eye(3, dtype=complex) / 3, t_end=200.0,
                  dt_max=0.1 / p.rate_scale)
    assert np.array_equal(traj.times, np.sort(traj.times))
    assert len(set(traj.times.tolist())) == len(traj.times)
    for state in traj.states:
        assert abs(np.trace(state).real - 1.0) <= 1e-9
        assert abs(np.trace(state).imag) <= 1e-9
        assert is_density_matrix(state)


def test_free_evolution_is_constant():
    zero = Liouvillian(matrix=np.zeros((9, 9), dtype=complex), rate_scale=0.0)
    rho0 = np.diag([0.2, 0.3, 0.5]).astype(complex)
    traj = evolve(zero, rho0, t_end=10.0, dt_max=1.0)
    for state in traj.states:
        assert np.array_equal(state, rho0)


def test_step_bound_enforced():
    p = reference_params("lambda")  # rate scale 105 -> bound ~9.5e-4 us
    L = build_liouvillian(p)
    with pytest.raises(StepTooLargeError):
        evolve(L, np.eye(3, dtype=complex) / 3, t_end=1.0, dt_max=0.01)


def test_evolve_argument_validation():
    L = Liouvillian(matrix=np.zeros((9, 9), dtype=complex), rate_scale=0.0)
    with pytest.raises(ValueError):
        evolve(L, np.eye(3) / 3, t_end=-1.0, dt_max=0.1)
    with pytest.raises(ValueError):
        evolve(L, np.eye(3) / 3, t_end=1.0, dt_max=0.0)


def test_is_density_matrix_checks():
    assert is_density_matrix(np.eye(3) / 3)
    assert not is_density_matrix(np.eye(3))                      # trace 3
    assert not is_density_matrix(np.diag([1.5, -0.5, 0.0]))      # negative
    skew = np.eye(3, dtype=complex) / 3
    skew[0, 1] = 0.1
    assert not is_density_matrix(skew)                           # non-Hermitian
