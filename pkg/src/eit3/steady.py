"""Steady-state solve and fixed-step time evolution of the master equation.

The steady state is the unit-trace null vector of the Liouvillian.  For the
generic (one-dimensional null space) case it is found by replacing the last
population-derivative row of L -- the row generating d(rho_11)/dt -- with
the trace constraint and solving the resulting linear system; the SVD is
used only to diagnose degeneracy and conditioning.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import DIAGONAL_VEC_INDICES, Liouvillian, unvectorize, vectorize

__all__ = [
    "DegenerateNullSpaceError",
    "SingularSolveError",
    "StepTooLargeError",
    "Trajectory",
    "null_space_dimension",
    "steady_state",
    "evolve",
    "is_density_matrix",
]

# singular values below NULL_TOL * sigma_max count as null directions
NULL_TOL = 1e-10
# condition estimate above this aborts the linear solve
COND_LIMIT = 1e14
# integrator step must satisfy h <= STEP_SAFETY / rate_scale
STEP_SAFETY = 0.1


class DegenerateNullSpaceError(ValueError):
    """Null space of the Liouvillian has dimension > 1; the stationary state
    is not unique and must be disambiguated by time evolution from a
    specific initial state."""


class SingularSolveError(ValueError):
    """Trace-constrained linear system is too ill-conditioned to trust."""


class StepTooLargeError(ValueError):
    """Requested integrator step violates the stability bound."""


@dataclass(frozen=True)
class Trajectory:
    """Sampled solution of the master equation.

    ``times`` are in microseconds, strictly increasing, starting at 0;
    ``states`` has shape (len(times), 3, 3).
    """

    times: np.ndarray
    states: np.ndarray

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]


def is_density_matrix(rho: np.ndarray, herm_tol: float = 1e-10,
                      trace_tol: float = 1e-10, eig_tol: float = 1e-9) -> bool:
    """Hermitian within herm_tol, unit trace within trace_tol, eigenvalues
    above -eig_tol."""
    rho = np.asarray(rho)
    if np.abs(rho - rho.conj().T).max() > herm_tol:
        return False
    if abs(np.trace(rho).real - 1.0) > trace_tol or abs(np.trace(rho).imag) > trace_tol:
        return False
    eig = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    return bool(eig.min() >= -eig_tol)


def null_space_dimension(L: Liouvillian, tol: float = NULL_TOL) -> int:
    """Number of singular values of L at or below tol * sigma_max."""
    sv = np.linalg.svd(L.matrix, compute_uv=False)
    return int(np.sum(sv <= tol * sv.max()))


def steady_state(L: Liouvillian) -> np.ndarray:
    """Unique stationary density matrix of the Liouvillian.

    Raises :class:`DegenerateNullSpaceError` when the null space has
    dimension > 1 and :class:`SingularSolveError` when the trace-constrained
    system exceeds the conditioning limit.  The returned state satisfies
    max|L vec(rho)| <= 1e-10 max|L| and Tr rho = 1.
    """
    if null_space_dimension(L) > 1:
        raise DegenerateNullSpaceError(
            "DegenerateNullSpace: Liouvillian null space has dimension > 1; "
            "the stationary state is not unique")
    M = L.matrix.copy()
    trace_row = DIAGONAL_VEC_INDICES[-1]  # d(rho_11)/dt row
    M[trace_row, :] = 0.0
    M[trace_row, list(DIAGONAL_VEC_INDICES)] = 1.0
    cond = np.linalg.cond(M)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise SingularSolveError(
            f"SingularSolve: condition estimate {cond:.3e} exceeds {COND_LIMIT:.0e}")
    b = np.zeros(9, dtype=complex)
    b[trace_row] = 1.0
    rho = unvectorize(np.linalg.solve(M, b))
    # symmetrize away the solver's rounding-level Hermiticity defect
    return 0.5 * (rho + rho.conj().T)


def _step_bound(L: Liouvillian) -> float:
    scale = L.rate_scale
    if scale is None:
        scale = float(np.abs(L.matrix).max())
    if scale == 0.0:
        return np.inf
    return STEP_SAFETY / scale


def evolve(L: Liouvillian, rho0: np.ndarray, t_end: float, dt_max: float,
           max_samples: int = 2001) -> Trajectory:
    """Integrate drho/dt = L rho with classical fixed-step RK4.

    The step is t_end/n with n chosen so the step is <= dt_max; dt_max must
    itself respect the stability bound 0.1 / max(g, Gamma, |Delta|), else
    :class:`StepTooLargeError` is raised.  For this autonomous linear system
    the four RK4 stages collapse to the quartic Taylor polynomial of exp(hL),
    which is precomputed once and applied per step.  At most ``max_samples``
    states are recorded (uniformly strided, always including t=0 and t_end).
    """
    if t_end <= 0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    if dt_max <= 0:
        raise ValueError(f"dt_max must be positive, got {dt_max}")
    bound = _step_bound(L)
    if dt_max > bound:
        raise StepTooLargeError(
            f"StepTooLarge: dt_max={dt_max:g} us exceeds the stability bound "
            f"{bound:g} us")
    n_steps = max(1, int(np.ceil(t_end / dt_max)))
    h = t_end / n_steps

    A = h * L.matrix
    eye = np.eye(9, dtype=complex)
    # RK4 one-step propagator: I + A + A^2/2 + A^3/6 + A^4/24 (Horner form)
    phi = eye + A @ (eye + (A / 2) @ (eye + (A / 3) @ (eye + A / 4)))

    stride = max(1, -(-n_steps // (max_samples - 1))) if max_samples > 1 else n_steps
    x = vectorize(rho0)
    times = [0.0]
    states = [unvectorize(x)]
    for k in range(1, n_steps + 1):
        x = phi @ x
        if k % stride == 0 or k == n_steps:
            times.append(t_end if k == n_steps else k * h)
            states.append(unvectorize(x))
    return Trajectory(times=np.array(times), states=np.array(states))
