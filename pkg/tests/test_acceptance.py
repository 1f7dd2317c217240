"""Acceptance criteria, one test per criterion, each printing PASS/FAIL.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  Criterion 4 asserts the stated vee resonance targets verbatim; at
those parameters the steady state of the equations of motion (both the
closed forms and the independent numeric solver, which agree to machine
precision) puts half the population in the ground level, so the criterion
fails and is reported honestly rather than loosened: rate balance gives
rho_33 = (g_probe / Gamma_31) * Im(rho_13) and positivity bounds
|rho_13| <= sqrt(rho_11 rho_33), so rho_11 <= 0.05 would force
rho_33 <= (10/6)^2 * 0.05 = 0.14, incompatible with rho_33 >= 0.35.
"""

from dataclasses import replace

import numpy as np

from conftest import random_params, random_state

from eit3.analytic import analytic_steady_state, steady_state_terms
from eit3.darkstate import estimate_mixing_angle, verify_dark_state
from eit3.model import (
    Configuration,
    SystemParams,
    build_liouvillian,
    obe_rhs,
)
from eit3.optics import (
    OpticalConstants,
    calibration_table,
    prefactor,
    sweep,
)
from eit3.presets import REFERENCE_OMEGA_MHZ, reference_params
from eit3.steady import evolve, is_density_matrix, steady_state
from eit3.su3 import gell_mann, shift_operator

GRID = np.linspace(-30.0, 30.0, 201)


def report(num, ok, detail):
    print(f"ACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def optics_for(tag):
    return OpticalConstants(omega_probe=REFERENCE_OMEGA_MHZ[Configuration(tag)])


def steady_pair(params, delta):
    p = replace(params, delta_probe=float(delta))
    return steady_state(build_liouvillian(p)), analytic_steady_state(p)


def test_criterion_1_oracle_equivalence():
    worst = 0.0
    for tag in ("lambda", "cascade", "vee"):
        params = reference_params(tag)
        for delta in GRID:
            num, ana = steady_pair(params, delta)
            worst = max(worst, float(np.abs(num - ana).max()))
    report(1, worst <= 1e-8,
           f"numeric vs closed-form steady states, 201-point sweeps, "
           f"max-abs diff {worst:.3e} (<= 1e-8)")


def test_criterion_2_lambda_trapping():
    params = reference_params("lambda")
    k = optics_for("lambda")
    pts = sweep(params, k, -30.0, 30.0, 201, backend="analytic")
    center = pts[100]
    alpha_max = max(p.alpha for p in pts)
    ok = (center.rho11 >= 0.99 and abs(center.rho33) <= 1e-9
          and center.alpha <= 1e-3 * alpha_max)
    report(2, ok,
           f"lambda resonance: rho11={center.rho11:.6f} (>=0.99), "
           f"rho33={center.rho33:.2e} (<=1e-9), "
           f"alpha(0)/max={center.alpha / alpha_max:.2e} (<=1e-3)")


def test_criterion_3_cascade_trapping():
    params = reference_params("cascade")
    k = optics_for("cascade")
    # absorption maximum taken over a window containing the doublet at
    # +-g_pump; the +-30 MHz window of criterion 1 sits inside the dip
    w = 2.0 * params.g_pump
    pts = sweep(params, k, -w, w, 401, backend="analytic")
    center = pts[200]
    alpha_max = max(p.alpha for p in pts)
    ok = center.rho11 >= 0.95 and center.alpha <= 1e-2 * alpha_max
    report(3, ok,
           f"cascade resonance: rho11={center.rho11:.6f} (>=0.95), "
           f"alpha(0)/max={center.alpha / alpha_max:.2e} (<=1e-2, "
           f"max over +-{w:.0f} MHz)")


def test_criterion_4_vee_superposition():
    params = reference_params("vee")
    num, ana = steady_pair(params, 0.0)
    assert np.abs(num - ana).max() <= 1e-8  # both solvers agree on the state
    r11, r22, r33 = (float(ana[2, 2].real), float(ana[1, 1].real),
                     float(ana[0, 0].real))
    theta = estimate_mixing_angle((r11, r22, r33), Configuration.VEE).theta
    ok = (r11 <= 0.05 and 0.35 <= r22 <= 0.65 and 0.35 <= r33 <= 0.65
          and abs(theta - np.pi / 4) <= 0.15)
    report(4, ok,
           f"vee resonance: rho11={r11:.4f} (<=0.05), rho22={r22:.4f}, "
           f"rho33={r33:.4f} (each in [0.35,0.65]), theta={theta:.4f} "
           f"(pi/4 +- 0.15); both solvers agree on these values")


def test_criterion_5_group_velocity():
    table = calibration_table()
    lines = [f"convention {conv}: " + ", ".join(
        f"{tag} v_g(0)={table['conventions'][conv][tag]:.4e} m/s"
        for tag in ("lambda", "cascade", "vee"))
        for conv in table["conventions"]]
    if table["within_10pct"]:
        errs = table["relative_errors"][table["chosen"]]
        ok = errs["cascade"] <= 0.15 and errs["vee"] <= 0.15
        report(5, ok, f"calibrated {table['chosen']}: cascade/vee errors "
                      f"{errs['cascade']:.3f}/{errs['vee']:.3f} (<=0.15)")
    else:
        # neither convention reaches the lambda reference within 10%:
        # both documented, acceptance reverts to the slow-light property
        ng_min = min(299792458.0 / vg
                     for conv in table["conventions"]
                     for vg in table["conventions"][conv].values())
        ok = all(299792458.0 / vg >= 1e12
                 for vg in table["conventions"][table["chosen"]].values())
        report(5, ok,
               "no convention matches the lambda v_g reference within 10% "
               f"({'; '.join(lines)}); fallback n_g(0) >= 1e12 holds for all "
               f"three systems (min n_g {ng_min:.2e})")


def test_criterion_6_property_suite(rng):
    # trace conservation over evolution
    params = reference_params("lambda")
    L = build_liouvillian(params)
    traj = evolve(L, np.eye(3, dtype=complex) / 3, t_end=500.0,
                  dt_max=0.1 / params.rate_scale)
    drift = max(abs(np.trace(s).real - 1.0) for s in traj.states)
    ok_trace = drift <= 1e-9

    # Hermiticity and positivity of every steady state on all sweeps
    ok_states = True
    for tag in ("lambda", "cascade", "vee"):
        p0 = reference_params(tag)
        for delta in GRID:
            num, ana = steady_pair(p0, delta)
            ok_states &= is_density_matrix(num) and is_density_matrix(ana)

    # generator vs transcribed equations on random states
    worst_obe = 0.0
    for config in Configuration:
        for _ in range(100):
            p = random_params(rng, config)
            rho = random_state(rng)
            diff = np.abs(build_liouvillian(p).apply(rho) - obe_rhs(p, rho)).max()
            worst_obe = max(worst_obe, float(diff))
    ok_obe = worst_obe <= 1e-12

    # SU(3) algebra identities
    ok_su3 = True
    for fam in ("T", "U", "V"):
        plus, minus = shift_operator(fam, "plus"), shift_operator(fam, "minus")
        three = shift_operator(fam, "three")
        ok_su3 &= np.abs(plus @ minus - minus @ plus - 2 * three).max() <= 1e-14
    for a in range(1, 9):
        for b in range(1, 9):
            tr = np.trace(gell_mann(a) @ gell_mann(b))
            ok_su3 &= abs(tr - (2.0 if a == b else 0.0)) <= 1e-14

    # closed-form normalization identity on randomized parameters
    worst_norm = 0.0
    for config in Configuration:
        for _ in range(50):
            p = replace(random_params(rng, config), delta_pump=0.0)
            t = steady_state_terms(p)
            total = sum(t.numerators[e] for e in ("11", "22", "33"))
            worst_norm = max(worst_norm, abs(total / t.denominator - 1.0))
    ok_norm = worst_norm <= 1e-12

    ok = ok_trace and ok_states and ok_obe and ok_su3 and ok_norm
    report(6, ok,
           f"trace drift {drift:.2e} (<=1e-9); steady states valid: "
           f"{ok_states}; generator-vs-equations {worst_obe:.2e} (<=1e-12); "
           f"su3 identities: {ok_su3}; normalization identity "
           f"{worst_norm:.2e} (<=1e-12)")


def test_criterion_7_dark_state_kernel():
    params = reference_params("lambda")
    residual = verify_dark_state(params)
    ok_kernel = residual <= 1e-12 * params.g_pump

    worst = 0.0
    for g_probe in np.linspace(0.1, 5.0, 25):
        p = SystemParams(Configuration.LAMBDA, float(g_probe), params.g_pump,
                         params.gamma_a, params.gamma_b)
        rho = analytic_steady_state(p)
        pops = (float(rho[2, 2].real), float(rho[1, 1].real),
                float(rho[0, 0].real))
        theta = estimate_mixing_angle(pops, Configuration.LAMBDA).theta
        worst = max(worst, abs(theta - np.arctan(g_probe / params.g_pump)))
    ok_law = worst <= 0.02
    report(7, ok_kernel and ok_law,
           f"kernel residual {residual:.2e} (<= {1e-12 * params.g_pump:.2e}); "
           f"coupling-ratio law max deviation {worst:.2e} rad (<=0.02)")


def test_criterion_8_dispersion_parity_and_slope():
    # mirrored grid = exact +-delta pairs (a plain 201-point linspace has
    # sub-ulp endpoint asymmetries that the huge dispersion slope amplifies)
    params = reference_params("lambda")
    k = optics_for("lambda")
    worst_odd = worst_even = 0.0
    for backend in ("analytic", "numeric"):
        for d in np.linspace(0.3, 30.0, 100):
            pts = sweep(params, k, -float(d), float(d), 3, backend=backend)
            lo, hi = pts[0], pts[2]
            worst_odd = max(worst_odd, abs((lo.n - 1.0) + (hi.n - 1.0)))
            worst_even = max(worst_even, abs(lo.alpha - hi.alpha))
    ok_parity = worst_odd <= 1e-9 and worst_even <= 1e-9

    slopes = {}
    for tag in ("lambda", "cascade", "vee"):
        p0 = reference_params(tag)
        pts = sweep(p0, optics_for(tag), -3.0, 3.0, 21, backend="analytic")
        slopes[tag] = (pts[11].n - pts[9].n) / (pts[11].delta - pts[9].delta)
    ok_slope = all(s > 0 for s in slopes.values())
    report(8, ok_parity and ok_slope,
           f"parity residuals odd {worst_odd:.2e} / even {worst_even:.2e} "
           f"(<=1e-9); dn/dDelta(0) > 0 for all: "
           + ", ".join(f"{t}={s:.3e}" for t, s in slopes.items()))
