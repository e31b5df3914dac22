"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the verdict lines
live (they are also shown in the failure report without ``-s``).
"""

import math
import subprocess
import sys
import time

import numpy as np
import pytest
from scipy.special import zeta

from lifshitz_plates import (
    CONSTANTS,
    EvaluationSettings,
    LayerStack,
    Plasma,
    build_rough_plate,
    eta_sweep,
    fit_roughness,
    gap_from_average,
    ideal_pressure,
    matsubara_pressure_term,
    pressure,
    pressure_zero_temperature,
)
from lifshitz_plates.engine import _kperp_term
from lifshitz_plates.stack import as_layer_stack

from conftest import GOLD_GAMMA, GOLD_WP


def _verdict(number, ok, detail):
    print(f"[criterion {number:2d}] {'PASS' if ok else 'FAIL'}: {detail}")
    return ok


def test_criterion_01_ideal_metal_oracle(perfect_stack):
    start = time.monotonic()
    errors = []
    for d in (0.5e-6, 1e-6, 2e-6):
        p = pressure_zero_temperature(perfect_stack, d)
        errors.append(abs(p - ideal_pressure(d)) / ideal_pressure(d))
    elapsed = time.monotonic() - start
    ok = max(errors) < 1e-6 and elapsed < 1.0
    assert _verdict(1, ok, f"max rel error {max(errors):.2e}, {elapsed:.2f} s")


def test_criterion_02_classical_limit_oracle(perfect_stack):
    """Full pressure vs the independently derived l = 0 closed form
    P_cl = zeta(3) k_B T / (4 pi a^3) at T = 300 K, a = 5 um."""
    a, temperature = 5e-6, 300.0
    settings = EvaluationSettings(temperature=temperature)
    start = time.monotonic()
    full = pressure(perfect_stack, a, settings)
    elapsed = time.monotonic() - start
    classical = zeta(3) * CONSTANTS.k_B * temperature / (4.0 * math.pi * a**3)
    # supporting evidence: the engine's own l = 0 term reproduces the oracle
    term = matsubara_pressure_term(perfect_stack, a, 0, settings)
    assert term.te + term.tm == pytest.approx(classical, rel=1e-10)
    deviation = abs(full - classical) / classical
    ok = deviation < 0.01 and elapsed < 1.0
    assert _verdict(
        2, ok,
        f"|P - P_cl|/P_cl = {deviation:.4f} (l>=1 remainder is physical; "
        f"l=0 term matches the zeta(3) form to 1e-10), {elapsed:.2f} s",
    )


def test_criterion_03_drude_zero_frequency_te(drude_stack, settings300):
    term = matsubara_pressure_term(drude_stack, 200e-9, 0, settings300)
    te_kperp, tm_kperp = _kperp_term(as_layer_stack(drude_stack), 200e-9, 0,
                                     settings300.temperature, settings300.quad_rel_tol)
    ok = term.te == 0.0 and te_kperp[0] == 0.0 and term.tm > 0.0 and tm_kperp[0] > 0.0
    assert _verdict(3, ok, f"l=0 TE term = {term.te!r} (exact zero), TM term {term.tm:.3e} Pa")


def test_criterion_04_degeneracy_limits(drude_stack, plasma_stack, settings300):
    a = 200e-9
    p_two = pressure(build_rough_plate(GOLD_WP, GOLD_GAMMA, 0.0, 0.9), a, settings300)
    p_drude = pressure(drude_stack, a, settings300)
    drude_dev = abs(p_two - p_drude) / p_drude
    thick = build_rough_plate(GOLD_WP, GOLD_GAMMA, 10.0 * CONSTANTS.c / GOLD_WP, 1.0)
    plasma_devs = []
    for d in (0.2e-6, 1e-6):
        p_thick = pressure(thick, d, settings300)   # f = 1, so a = d
        p_plasma = pressure(plasma_stack, d, settings300)
        plasma_devs.append(abs(p_thick - p_plasma) / p_plasma)
    ok = drude_dev <= 1e-10 and max(plasma_devs) < 0.005
    assert _verdict(
        4, ok,
        f"h=0 vs Drude rel {drude_dev:.2e}; thick-layer vs plasma rel {max(plasma_devs):.2e}",
    )


def test_criterion_05_model_ordering(drude_stack, plasma_stack, settings300):
    start = time.monotonic()
    d_grid = np.geomspace(0.1e-6, 5e-6, 30)
    eta_drude = eta_sweep(drude_stack, d_grid, settings300).eta
    eta_plasma = eta_sweep(plasma_stack, d_grid, settings300).eta
    eta_rough = eta_sweep(build_rough_plate(GOLD_WP, GOLD_GAMMA, 11e-9, 0.9),
                          d_grid, settings300).eta
    eta_smooth = eta_sweep(build_rough_plate(GOLD_WP, GOLD_GAMMA, 2e-9, 0.5),
                           d_grid, settings300).eta
    elapsed = time.monotonic() - start
    below_rough = bool(np.all(eta_drude < eta_rough))
    below_plasma = bool(np.all(eta_rough <= eta_plasma))
    smooth_between = bool(np.all((eta_drude < eta_smooth) & (eta_smooth < eta_rough)))
    excess = float(np.max(eta_rough - eta_plasma))
    violating = d_grid[eta_rough > eta_plasma]
    ok = below_rough and below_plasma and smooth_between and elapsed < 60.0
    assert _verdict(
        5, ok,
        f"drude<rough {below_rough}; rough<=plasma {below_plasma} "
        f"(max excess {excess:+.4f} for d <= {violating.max() * 1e6 if violating.size else 0:.2f} um); "
        f"smooth between {smooth_between}; {elapsed:.1f} s",
    )


def test_criterion_06_plasma_proximity(plasma_stack, rough_plate, settings300):
    d_grid = np.linspace(162e-9, 746e-9, 30)
    eta_rough = eta_sweep(rough_plate, d_grid, settings300).eta
    eta_plasma = eta_sweep(plasma_stack, d_grid, settings300).eta
    gap = float(np.max(np.abs(eta_rough - eta_plasma)))
    at = float(d_grid[np.argmax(np.abs(eta_rough - eta_plasma))])
    ok = gap < 0.01
    assert _verdict(6, ok, f"max |eta_rough - eta_plasma| = {gap:.4f} at d = {at * 1e9:.0f} nm")


def test_criterion_07_thermal_indistinguishability(rough_plate, settings300):
    start = time.monotonic()
    d_grid = np.linspace(162e-9, 746e-9, 30)
    eta_300 = eta_sweep(rough_plate, d_grid, settings300).eta
    eta_0 = eta_sweep(rough_plate, d_grid, EvaluationSettings(zero_temperature=True)).eta
    elapsed = time.monotonic() - start
    gap = float(np.max(np.abs(eta_300 - eta_0)))
    at = float(d_grid[np.argmax(np.abs(eta_300 - eta_0))])
    ok = gap < 0.01
    assert _verdict(
        7, ok, f"max |eta(300K) - eta(0K)| = {gap:.4f} at d = {at * 1e9:.0f} nm, {elapsed:.1f} s")


def test_criterion_08_fit_recovery(synthesize, gold):
    start = time.monotonic()
    d_grid = np.linspace(162e-9, 746e-9, 30)
    clean = synthesize(11e-9, 0.9, d_grid)
    result = fit_roughness(clean, (5e-9, 0.8), gold, 300.0)
    h_err = abs(result.h - 11e-9)
    f_err = abs(result.f - 0.9)
    noiseless_ok = result.converged and h_err <= 0.1e-9 and f_err <= 0.005

    h_errs, f_errs = [], []
    for seed in range(20):
        noisy = synthesize(11e-9, 0.9, d_grid, noise=0.002, seed=seed)
        fitted = fit_roughness(noisy, (5e-9, 0.8), gold, 300.0)
        h_errs.append(abs(fitted.h - 11e-9))
        f_errs.append(abs(fitted.f - 0.9))
    median_h = float(np.median(h_errs))
    median_f = float(np.median(f_errs))
    elapsed = time.monotonic() - start
    noisy_ok = median_h <= 1e-9 and median_f <= 0.05
    ok = noiseless_ok and noisy_ok and elapsed < 300.0
    assert _verdict(
        8, ok,
        f"noiseless dh = {h_err * 1e9:.3f} nm, df = {f_err:.4f}; "
        f"noisy medians dh = {median_h * 1e9:.3f} nm, df = {median_f:.4f}; {elapsed:.0f} s",
    )


def test_criterion_09_numerical_robustness(drude_stack, rough_plate):
    worst = 0.0
    for plate, h, f in ((drude_stack, 0.0, 1.0), (rough_plate, 11e-9, 0.9)):
        for d in (0.2e-6, 1e-6, 5e-6):
            a = gap_from_average(d, h, f)
            base = pressure(plate, a, EvaluationSettings(temperature=300.0))
            tight = pressure(plate, a, EvaluationSettings(temperature=300.0, quad_rel_tol=5e-10))
            budget = pressure(plate, a, EvaluationSettings(temperature=300.0, l_max=10000))
            worst = max(worst, abs(tight - base) / base, abs(budget - base) / base)
    ok = worst < 1e-7
    assert _verdict(9, ok, f"max relative change {worst:.2e}")


def test_criterion_10_cli_determinism():
    argv = [sys.executable, "-m", "lifshitz_plates.cli", "sweep",
            "--model", "two-layer", "--h-nm", "11", "--f", "0.9",
            "--dmin", "0.2", "--dmax", "2.0", "--points", "7", "--log"]
    first = subprocess.run(argv, capture_output=True, check=True)
    second = subprocess.run(argv, capture_output=True, check=True)
    ok = first.stdout == second.stdout and len(first.stdout) > 0
    assert _verdict(10, ok, f"{len(first.stdout)} output bytes byte-identical across runs")
