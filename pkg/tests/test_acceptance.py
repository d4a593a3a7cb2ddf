"""Acceptance criteria, one test each.  Tolerances are the published ones."""
import csv
import io
import math
import time

import numpy as np
import pytest

from atomwall import (CutoffProfile, OscillatoryParams, RadialGrid, WallGeometry,
                      bound_state_energies, build_spectral_measure, coulomb_expectation,
                      dalgarno_lewis_reference, eval_I_contour, eval_I_direct, eval_J,
                      interaction_energy, phi_sharp_norm_scaling, potential)
from atomwall import cli_reports as cli
from atomwall.interaction_energy import fit_power_law
from atomwall.oscillatory_engine import aleph_of_product


def report(n, ok, msg):
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {msg}")
    assert ok, msg


def test_01_sum_rules_and_runtime():
    t0 = time.perf_counter()
    m = build_spectral_measure(RadialGrid(200.0, 20000))
    elapsed = time.perf_counter() - t0
    r0 = abs(m.total_weight - 12) / 12
    r1 = abs(m.first_moment - 3) / 3
    ok = r0 <= 1e-6 and r1 <= 1e-6 and elapsed < 30
    report(1, ok, f"sum(w) rel {r0:.3e}, sum(w lambda) rel {r1:.3e} (tol 1e-6), {elapsed:.1f} s")


def test_02_bound_states_and_gap(measure):
    e = bound_state_energies(RadialGrid(), 3)
    d = float(np.max(np.abs(e - np.array([-1 / 16, -1 / 36, -1 / 64]))))
    gap = float(measure.lambdas[0])
    ok = d <= 1e-6 and abs(gap - 3 / 16) <= 1e-6
    report(2, ok, f"max level error {d:.3e}, gap {gap:.9f} vs 3/16")


def test_03_dalgarno_lewis_and_aleph(measure):
    inv = measure.expectation(lambda l: 1 / l)
    oracle = dalgarno_lewis_reference()
    r = abs(inv - oracle) / oracle
    al = aleph_of_product(100.0, measure)
    ra = abs(al - inv / (6 * math.pi)) / (inv / (6 * math.pi))
    report(3, r <= 1e-3 and ra <= 1e-2,
           f"sum(w/lambda) {inv:.6f} vs oracle {oracle:.6f} (rel {r:.2e}); aleph(100) rel {ra:.2e}")


def test_04_contour_identity(measure):
    worst = 0.0
    for L in (5.0, 20.0, 100.0):
        p = OscillatoryParams(0.01, L, CutoffProfile("exp", 1.0))
        I = eval_I_direct(p, measure)
        arc, imag = eval_I_contour(p, measure)
        worst = max(worst, abs(I - (arc + imag)) / abs(I))
    report(4, worst <= 1e-4, f"worst relative residual {worst:.3e}")


def test_05_vdw_cancellation(measure):
    a, L = 0.005, 50.0
    b = interaction_energy(OscillatoryParams(a, L), measure)
    lhs = (a**2 / L**3 - b.script_E) * L**4 / a
    r = abs(lhs / b.aleph - 1)
    report(5, r <= 0.05, f"(a^2/L^3 - E) L^4/a = {lhs:.6e}, aleph = {b.aleph:.6e}, rel {r:.3e}")


def test_06_regime_rows(measure):
    b = interaction_energy(OscillatoryParams(0.01, 2.0), measure)
    v = b.W_qft * 2.0**3 / 0.01**2
    a = 1e-4
    L = 16 / 3 * a**-0.5
    c = interaction_energy(OscillatoryParams(a, L), measure)
    ratio = c.W_qft / (-(16 / 3) * a**1.5 / L**4)
    ok = -1.05 <= v <= -0.95 and abs(ratio - 1) <= 0.10
    report(6, ok, f"vdW row W L^3/a^2 = {v:.5f}; crossover row ratio {ratio:.5f}")


def test_07_scaling_fits(measure):
    # the O(alpha^3/L^2) form is reached once alpha L >> 16/3
    alphas = np.geomspace(1e-3, 1e-1, 7)
    sa, _ = fit_power_law(alphas, [eval_J(OscillatoryParams(a, 1e5), measure) for a in alphas])
    Ls = np.geomspace(1e4, 1e5, 7)
    sl, _ = fit_power_law(Ls, [eval_J(OscillatoryParams(0.01, L), measure) for L in Ls])
    fit = phi_sharp_norm_scaling(measure, np.geomspace(1e-4, 1e-2, 7), 10.0)
    ok = abs(sa - 3) <= 0.15 and abs(sl + 2) <= 0.3 and 2.8 <= fit.exponent <= 3.2
    report(7, ok, f"J alpha exponent {sa:.4f} (L=1e5), J L exponent {sl:.4f} (alpha=0.01, "
                  f"L in [1e4,1e5]), ||Phi_#||^2 exponent {fit.exponent:.4f}")


@pytest.mark.xfail(strict=True, reason="at alpha L ~ 0.05..1 the J term is not yet in its L^-2 regime")
def test_07b_J_L_exponent_at_short_range(measure):
    Ls = np.geomspace(5, 100, 7)
    sl, _ = fit_power_law(Ls, [eval_J(OscillatoryParams(0.01, L), measure) for L in Ls])
    assert abs(sl + 2) <= 0.3, sl


def test_08_thresholds(capsys):
    code = cli.main(["regimes", "--alpha", repr(1 / 173)])
    out = capsys.readouterr().out
    rows = {n: L for n, L, _ in cli.regime_thresholds(1 / 173)}
    ok = code == 0 and 160 <= rows["eta = 1/3"] <= 170 and abs(rows["vdW boundary"] - 5.3) < 0.05
    ok = ok and "eta = 1/3: L = 165.59" in out
    report(8, ok, f"eta=1/3 at L = {rows['eta = 1/3']:.2f}, vdW at L = {rows['vdW boundary']:.3f}")


def test_09_coulomb_baseline():
    v = coulomb_expectation(WallGeometry(0.01, 10.0)) * 10.0**3 / 0.01**2
    rng = np.random.default_rng(20240601)
    g = WallGeometry(0.01, 10.0)
    x = rng.uniform(-2 * g.y, g.y, size=(10000, 3))
    x[:, 0] = np.minimum(x[:, 0], np.nextafter(g.y, 0))
    nonpos = bool(np.all(potential(g, x) <= 0))
    report(9, abs(v + 1) <= 0.01 and nonpos,
           f"coulomb L^3/a^2 at L=10: {v:.5f} (need within 1% of -1); V <= 0 on 1e4 points: {nonpos}")


def test_10_determinism(measure, tmp_path):
    args = ["sweep", "--alpha", repr(1 / 173), "--L-min", "2", "--L-max", "300", "--steps", "50",
            "--log-steps"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(args + ["--out", str(a)]) == 0
    assert cli.main(args + ["--out", str(b), "--workers", "4"]) == 0
    same = a.read_bytes() == b.read_bytes()
    labels = [r["regime"] for r in csv.DictReader(io.StringIO(a.read_text()))]
    order = [k for i, k in enumerate(labels) if i == 0 or labels[i - 1] != k]
    report(10, same and order == ["van_der_waals", "crossover", "error_dominated"],
           f"byte-identical: {same}; regime sequence {order}")
