"""Population analysis, mixing angles and dark-state construction.

Each topology owns a two-state superposition decoupled from the driving,

    lambda:  cos(theta)|1> - sin(theta)|2>
    cascade: cos(theta)|1> - sin(theta)|3>
    vee:     cos(theta)|2> - sin(theta)|3>

The mixing angle is estimated from steady-state populations of the two
bare states spanning the superposition, theta = atan2(sqrt(rho_qq),
sqrt(rho_pp)), discarding any residual third-level population.  Only the
lambda superposition is annihilated by the interaction Hamiltonian at the
coupling-ratio angle theta* = atan(g_probe / g_pump);
:func:`verify_dark_state` checks that kernel property directly and is
therefore restricted to the lambda system.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .analytic import analytic_steady_state
from .model import Configuration, SystemParams, build_liouvillian
from .steady import steady_state
from .su3 import shift_operator

__all__ = [
    "UndefinedAngleError",
    "UnsupportedConfigurationError",
    "MixingAngleReport",
    "population_sweep",
    "estimate_mixing_angle",
    "dark_state_vector",
    "verify_dark_state",
]

_LEVEL_INDEX = {1: 2, 2: 1, 3: 0}

# (p, q): bare-state pair spanning the dark superposition, cos on p
_DARK_PAIR = {
    Configuration.LAMBDA: (1, 2),
    Configuration.CASCADE: (1, 3),
    Configuration.VEE: (2, 3),
}


class UndefinedAngleError(ValueError):
    """Dark-state pair carries too little population to define an angle."""


class UnsupportedConfigurationError(ValueError):
    """Kernel verification only applies to the lambda system."""


@dataclass(frozen=True)
class MixingAngleReport:
    """Mixing angle (radians, in [0, pi/2]) with its inputs and the
    resulting dark-state vector over the (|3>, |2>, |1>) amplitude order."""

    theta: float
    populations: tuple[float, float, float]
    config: Configuration
    dark_state: np.ndarray


def population_sweep(params: SystemParams, delta_min: float, delta_max: float,
                     points: int, backend: str = "analytic",
                     ) -> list[tuple[float, float, float, float]]:
    """Steady-state populations (delta, rho11, rho22, rho33) on a uniform
    probe-detuning grid.  Solver errors propagate to the caller."""
    if points < 2:
        raise ValueError(f"points must be >= 2, got {points}")
    out = []
    for d in np.linspace(delta_min, delta_max, points):
        p = replace(params, delta_probe=float(d))
        if backend == "numeric":
            rho = steady_state(build_liouvillian(p))
        elif backend == "analytic":
            rho = analytic_steady_state(p)
        else:
            raise ValueError(f"backend must be 'numeric' or 'analytic', got {backend!r}")
        out.append((float(d), float(rho[2, 2].real), float(rho[1, 1].real),
                    float(rho[0, 0].real)))
    return out


def estimate_mixing_angle(populations: tuple[float, float, float],
                          config: Configuration) -> MixingAngleReport:
    """Mixing angle from the populations of the configuration's dark pair.

    ``populations`` is (rho11, rho22, rho33), normalized; tiny negative
    entries from numerics are clipped to zero.  Raises
    :class:`UndefinedAngleError` when the pair holds less than 1e-6 of the
    population.
    """
    r11, r22, r33 = populations
    total = r11 + r22 + r33
    if abs(total - 1.0) > 1e-6:
        raise ValueError(f"populations must sum to 1, got {total}")
    by_level = {1: max(r11, 0.0), 2: max(r22, 0.0), 3: max(r33, 0.0)}
    p, q = _DARK_PAIR[config]
    if by_level[p] + by_level[q] < 1e-6:
        raise UndefinedAngleError(
            f"UndefinedAngle: dark pair |{p}>,|{q}> holds "
            f"{by_level[p] + by_level[q]:.2e} population")
    theta = float(np.arctan2(np.sqrt(by_level[q]), np.sqrt(by_level[p])))
    return MixingAngleReport(theta=theta, populations=(r11, r22, r33),
                             config=config,
                             dark_state=dark_state_vector(theta, config))


def dark_state_vector(theta: float, config: Configuration) -> np.ndarray:
    """cos(theta)|p> - sin(theta)|q> for the configuration's dark pair."""
    if not 0.0 <= theta <= np.pi / 2:
        raise ValueError(f"theta must be in [0, pi/2], got {theta}")
    p, q = _DARK_PAIR[config]
    vec = np.zeros(3, dtype=complex)
    vec[_LEVEL_INDEX[p]] = np.cos(theta)
    vec[_LEVEL_INDEX[q]] = -np.sin(theta)
    return vec


def verify_dark_state(params: SystemParams) -> float:
    """Norm of H_int acting on the coupling-ratio dark state (lambda only).

    Builds the interaction part of the rotating-frame Hamiltonian (coupling
    terms only), sets theta* = atan(g_probe / g_pump) and returns
    ||H_int |a0(theta*)>||; the two arms cancel exactly, so the residual is
    bounded by 1e-12 max(g).  Requires both detunings zero; raises
    :class:`UnsupportedConfigurationError` for cascade and vee, whose
    superpositions are not annihilated by their interaction Hamiltonians.
    """
    if params.config is not Configuration.LAMBDA:
        raise UnsupportedConfigurationError(
            "UnsupportedConfiguration: kernel verification applies to the "
            f"lambda system only, got {params.config.value}")
    if params.delta_probe != 0.0 or params.delta_pump != 0.0:
        raise ValueError("verify_dark_state requires both detunings zero")
    h_int = (params.g_probe * (shift_operator("V", "plus") + shift_operator("V", "minus"))
             + params.g_pump * (shift_operator("T", "plus") + shift_operator("T", "minus")))
    theta_star = float(np.arctan2(params.g_probe, params.g_pump))
    dark = dark_state_vector(theta_star, Configuration.LAMBDA)
    return float(np.linalg.norm(h_int @ dark))
