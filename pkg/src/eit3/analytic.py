"""Closed-form steady states for zero pump detuning.

Each configuration's stationary density matrix is a ratio of polynomials in
the couplings, decay constants and probe detuning: every element is a
numerator over one common real denominator D, with the three population
numerators summing exactly to D (normalization is built into the formulas).
The polynomials below are transcribed with their printed groupings and
evaluated in double precision; transcription fidelity is guarded by two
independent tests, the numerator-sum identity and element-wise agreement
with the numeric null-space solver.

These formulas assume the pump detuning is zero; the numeric solver covers
the general case.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import Configuration, SystemParams

__all__ = [
    "PumpDetuningUnsupportedError",
    "DegenerateDenominatorError",
    "AnalyticSteadyState",
    "steady_state_terms",
    "analytic_steady_state",
    "analytic_element",
]

# |D| below this is treated as a vanishing denominator
DENOMINATOR_FLOOR = 1e-30

_ELEMENTS = ("11", "22", "33", "12", "13", "23")


class PumpDetuningUnsupportedError(ValueError):
    """Closed forms are only available for zero pump detuning."""


class DegenerateDenominatorError(ZeroDivisionError):
    """Common denominator underflows (no unique stationary state)."""


@dataclass(frozen=True)
class AnalyticSteadyState:
    """Raw numerators and denominator of the closed-form steady state.

    ``denominator`` is real and positive for physical parameters;
    ``numerators`` maps "11", "22", "33", "12", "13", "23" to the complex
    numerator of that density-matrix element.
    """

    denominator: float
    numerators: dict[str, complex]


def _lambda_terms(g13, g23, G31, G32, d):
    Gs = G31 + G32
    D = (G32 * g13**6 + g23**2 * (G31 + 2 * G32) * g13**4
         + ((2 * G31 + G32) * g23**4
            + Gs * (2 * g23**2 + G32 * Gs) * d**2) * g13**2
         + g23**2 * G31 * (g23**4 - 2 * d**2 * g23**2 + d**4 + Gs**2 * d**2))
    n11 = g23**2 * (G31 * d**4
                    + G31 * (g13**2 - 2 * g23**2 + Gs**2) * d**2
                    + (g13**2 + g23**2) * (G32 * g13**2 + g23**2 * G31))
    n22 = g13**2 * (G32 * g13**4 + g23**2 * Gs * g13**2
                    + G32 * Gs**2 * d**2 + g23**2 * G32 * d**2 + g23**4 * G31)
    n33 = g13**2 * g23**2 * Gs * d**2
    n12 = -g13 * g23 * (G32 * g13**4
                        + Gs * (g23**2 + 1j * G32 * d) * g13**2
                        + g23**2 * G31 * (g23**2 + 1j * (Gs + 1j * d) * d))
    n13 = g13 * g23**2 * d * (G32 * g13**2 + g23**2 * G31
                              + 1j * G31 * (Gs + 1j * d) * d)
    n23 = -g13**2 * g23 * d * (G31 * g23**2 + G32 * (g13**2 - 1j * Gs * d))
    return D, n11, n22, n33, n12, n13, n23


def _cascade_terms(g12, g23, G21, G32, d):
    Gs = G21 + G32
    D = (2 * G21 * G32 * g12**6
         + ((G21**2 + 4 * G32 * G21 + 2 * G32**2) * g23**2
            + G21 * G32 * ((G21 + 2 * G32)**2 + d**2)) * g12**4
         + ((2 * G21**2 + 3 * G32 * G21 + 2 * G32**2) * g23**4
            + ((2 * G21**2 + 4 * G32 * G21 + G32**2) * d**2
               + G32 * (4 * G21**3 + 7 * G32 * G21**2
                        + 6 * G32**2 * G21 + 2 * G32**3)) * g23**2
            + 2 * G21 * G32 * Gs * ((G21 + 2 * G32) * d**2
                                    + G32 * (G21**2 + G32 * G21 + G32**2))) * g12**2
         + G21 * Gs * (g23**2 + G32 * Gs)
         * (g23**4 + 2 * (G21 * G32 - d**2) * g23**2
            + (G21**2 + d**2) * (G32**2 + d**2)))
    n11 = (G21 * G32 * g12**6
           + G32 * (Gs * g23**2
                    + G21 * (G21**2 + 2 * G32 * G21 + 2 * G32**2 + d**2)) * g12**4
           + (G21**2 * g23**4
              + ((G21**2 + 3 * G32 * G21 + G32**2) * d**2
                 + G32 * (3 * G21**3 + 3 * G32 * G21**2
                          + 2 * G32**2 * G21 + G32**3)) * g23**2
              + G21 * G32 * Gs * ((G21 + 3 * G32) * d**2
                                  + G32 * (2 * G21**2 + G32 * G21 + G32**2))) * g12**2
           + G21 * Gs * (g23**2 + G32 * Gs)
           * (g23**4 + 2 * (G21 * G32 - d**2) * g23**2
              + (G21**2 + d**2) * (G32**2 + d**2)))
    n22 = g12**2 * (G21 * G32 * g12**4
                    + G32 * ((2 * G21 + G32) * g23**2 + 2 * G21 * G32 * Gs) * g12**2
                    + Gs * (g23**2 + G32 * Gs)
                    * (G32 * g23**2 + G21 * (G32**2 + d**2)))
    n33 = g12**2 * g23**2 * Gs * (G21 * g12**2 + Gs * (g23**2 + G21 * G32))
    n12 = 1j * g12 * (G21 * G32 * (G21 + 1j * d) * g12**4
                      + G32 * ((2 * G21 + G32) * g23**2 + 2 * G21 * G32 * Gs)
                      * (G21 + 1j * d) * g12**2
                      + G21 * Gs * (g23**2 + G32 * Gs)
                      * (g23**2 + (G21 + 1j * d) * (G32 + 1j * d))
                      * (G32 - 1j * d))
    n13 = g12 * g23 * (G21 * G32 * g12**4
                       + (-G32 * G21**3 + G32**3 * G21
                          + g23**2 * (-G21**2 + G32 * G21 + G32**2)) * g12**2
                       - G21 * Gs * (g23**2 + G32 * Gs)
                       * (g23**2 + (G21 + 1j * d) * (G32 + 1j * d)))
    n23 = 1j * g12**2 * g23 * Gs * (G21 * G32 * g12**2
                                    + G32 * Gs * (g23**2 + G21 * G32)
                                    + 1j * G21 * (g23**2 + G32 * Gs) * d)
    return D, n11, n22, n33, n12, n13, n23


def _vee_terms(g13, g12, G21, G31, d):
    Gs = G21 + G31
    K = g13**2 + G21 * Gs
    Q = K**2 + G21**2 * d**2
    D = (2 * G21 * G31 * g12**6
         + (2 * (G21**2 + G31 * G21 + G31**2) * g13**2
            + G21 * G31 * ((G21 + 2 * G31)**2 - 4 * d**2)) * g12**4
         + (2 * G21 * G31 * d**4
            + ((G21**2 + 6 * G31 * G21 + 2 * G31**2) * g13**2
               + 4 * G21 * G31**2 * Gs) * d**2
            + 2 * (g13**2 + G31**2) * (G21**2 + G31 * G21 + G31**2) * K) * g12**2
         + G21 * G31 * (2 * g13**2 + G31**2 + d**2) * Q)
    n11 = (G21 * G31 * g12**6
           + ((G21**2 + G31 * G21 + G31**2) * g13**2
              + G21 * G31 * (G21**2 + 2 * G31 * G21 + 2 * G31**2 - 2 * d**2)) * g12**4
           + ((G21**2 + G31 * G21 + G31**2) * g13**4
              + (G21**4 + 2 * G31 * G21**3 + 4 * G31**2 * G21**2
                 + 2 * G31**3 * G21 + G31**4
                 + G31 * (2 * G21 + G31) * d**2) * g13**2
              + G21 * G31 * (2 * G31 * G21**3 + (3 * G31**2 - d**2) * G21**2
                             + 2 * G31 * (G31**2 + d**2) * G21
                             + (G31**2 + d**2)**2)) * g12**2
           + G21 * G31 * (g13**2 + G31**2 + d**2) * Q)
    n22 = g12**2 * (G21 * G31 * g12**4
                    + ((G21**2 + G31**2) * g13**2
                       + 2 * G21 * G31 * (G31 * Gs - d**2)) * g12**2
                    + G31 * (G21 * g13**4
                             + (G21**3 + G31 * G21**2 + G31**2 * G21 + G31**3
                                + (3 * G21 + G31) * d**2) * g13**2
                             + G21 * (G31**2 + d**2) * (Gs**2 + d**2)))
    n33 = g13**2 * (G21 * G31 * g12**4
                    + ((G21**2 + G31**2) * g13**2
                       + G21 * Gs * (G21**2 + G31**2 + d**2)) * g12**2
                    + G21 * G31 * Q)
    n12 = 1j * g12 * (G21**2 * G31 * g12**4
                      + ((G21**3 + G31**2 * G21 + 2j * G31**2 * d) * g13**2
                         + 2 * G21**2 * G31 * (G31 * Gs - d**2)) * g12**2
                      + G21 * G31 * (g13**2 + G21 * (Gs - 1j * d))
                      * ((G21 + 2j * d) * g13**2
                         + (Gs + 1j * d) * (G31**2 + d**2)))
    n13 = 1j * g13 * (G21 * G31 * (G31 - 1j * d) * g12**4
                      + (1j * G21 * G31 * d**3 + G21 * G31 * Gs * d**2
                         + 1j * (g13**2 + G21 * G31) * (G31**2 - G21**2) * d
                         + G31 * (G21**2 + G31**2) * K) * g12**2
                      + G21 * G31 * (G31 + 1j * d) * Q)
    n23 = g12 * g13 * (G21 * G31 * g12**4
                       + ((G21**2 + G31**2) * g13**2
                          + G21 * G31 * (G21**2 + 2 * G31 * G21
                                         + (G31 + 1j * d)**2)) * g12**2
                       + G21 * G31 * (g13**2 + G21 * (Gs + 1j * d))
                       * (g13**2 + d**2 + G31 * Gs + 1j * G21 * d))
    return D, n11, n22, n33, n12, n13, n23


_TERMS = {
    Configuration.LAMBDA: _lambda_terms,
    Configuration.CASCADE: _cascade_terms,
    Configuration.VEE: _vee_terms,
}


def steady_state_terms(params: SystemParams) -> AnalyticSteadyState:
    """Evaluate the closed-form numerators and denominator.

    Requires ``delta_pump == 0``; raises
    :class:`PumpDetuningUnsupportedError` otherwise and
    :class:`DegenerateDenominatorError` when |D| underflows (for example
    with both couplings zero).
    """
    if params.delta_pump != 0.0:
        raise PumpDetuningUnsupportedError(
            "PumpDetuningUnsupported: closed-form steady states require "
            f"delta_pump = 0, got {params.delta_pump}")
    fn = _TERMS[params.config]
    D, n11, n22, n33, n12, n13, n23 = fn(
        params.g_probe, params.g_pump, params.gamma_a, params.gamma_b,
        params.delta_probe)
    if abs(D) < DENOMINATOR_FLOOR:
        raise DegenerateDenominatorError(
            f"DegenerateDenominator: |D| = {abs(D):.3e} underflows")
    return AnalyticSteadyState(
        denominator=float(D),
        numerators={"11": complex(n11), "22": complex(n22), "33": complex(n33),
                    "12": complex(n12), "13": complex(n13), "23": complex(n23)})


def analytic_element(params: SystemParams, element: str) -> complex:
    """Single steady-state element rho_kl for element in
    {"11","22","33","12","13","23"}."""
    if element not in _ELEMENTS:
        raise ValueError(f"element must be one of {_ELEMENTS}, got {element!r}")
    terms = steady_state_terms(params)
    return terms.numerators[element] / terms.denominator


def analytic_steady_state(params: SystemParams) -> np.ndarray:
    """Full closed-form steady state assembled with rho_lk = conj(rho_kl)."""
    terms = steady_state_terms(params)
    D = terms.denominator
    n = terms.numerators
    rho = np.empty((3, 3), dtype=complex)
    rho[2, 2] = n["11"] / D
    rho[1, 1] = n["22"] / D
    rho[0, 0] = n["33"] / D
    rho[2, 1] = n["12"] / D
    rho[2, 0] = n["13"] / D
    rho[1, 0] = n["23"] / D
    rho[1, 2] = np.conj(rho[2, 1])
    rho[0, 2] = np.conj(rho[2, 0])
    rho[0, 1] = np.conj(rho[1, 0])
    return rho
