import math

import numpy as np
import pytest

from atomwall import (OscillatoryParams, classify_regime, interaction_energy,
                      phi_sharp_norm_scaling, regime_thresholds, script_E)
from atomwall.interaction_energy import (VDW_BOUNDARY, crossover_eta, error_budget,
                                         fit_power_law)
from atomwall.oscillatory_engine import eval_I_direct, eval_J

ALPHA = 1.0 / 173.0


@pytest.mark.parametrize("L,label", [
    (2.0, "van_der_waals"), (5.3, "van_der_waals"), (5.4, "crossover"), (10.0, "crossover"),
    (165.0, "crossover"), (166.5, "error_dominated"), (900.0, "error_dominated"),
    (2000.0, "retarded"),
])
def test_regime_labels(L, label):
    assert classify_regime(ALPHA, L).label == label


def test_retarded_band_reported():
    r = classify_regime(ALPHA, 1000.0)
    assert r.band == "retarded" and r.error_dominated


def test_retarded_label_beyond_band():
    L = 2 * VDW_BOUNDARY / ALPHA
    r = classify_regime(ALPHA, L)
    assert r.label == "retarded" and r.eta < 0


def test_boundaries_continuous():
    # eta -> 1 at the vdW boundary and eta -> 0 at the retarded one
    assert crossover_eta(ALPHA, VDW_BOUNDARY * (1 + 1e-9)) == pytest.approx(1.0, abs=1e-8)
    assert crossover_eta(ALPHA, VDW_BOUNDARY / ALPHA * (1 - 1e-9)) == pytest.approx(0.0, abs=1e-8)
    assert classify_regime(0.5, VDW_BOUNDARY * (1 + 1e-9)).label == "crossover"
    assert classify_regime(0.5, VDW_BOUNDARY / 0.5 * (1 + 1e-9)).label == "retarded"


def test_eta_definition():
    for eta in (2 / 3, 1 / 2, 1 / 3):
        L = VDW_BOUNDARY * ALPHA ** (eta - 1)
        assert crossover_eta(ALPHA, L) == pytest.approx(eta, rel=1e-12)


def test_threshold_rows():
    rows = dict((n, L) for n, L, _ in regime_thresholds(ALPHA))
    assert rows["vdW boundary"] == pytest.approx(16 / 3)
    assert rows["retarded boundary"] == pytest.approx(16 / 3 * 173)
    assert rows["eta = 2/3"] < rows["eta = 1/2"] < rows["eta = 1/3"]


@pytest.mark.parametrize("alpha", [0.0, 1.0])
def test_regime_validation(alpha):
    with pytest.raises(ValueError):
        classify_regime(alpha, 3.0)
    with pytest.raises(ValueError):
        regime_thresholds(alpha)


def test_error_budget_values():
    b = error_budget(0.01, 10.0, (1.0, 2.0, 3.0, 4.0))
    lg = math.log(100.0)
    assert b.e1 == pytest.approx(1e-8 * lg)
    assert b.e2 == pytest.approx(2 * 1e-4 * 10 * math.exp(-5))
    assert b.e3 == pytest.approx(3 * 1e-4 / 1e5)
    assert b.e4 == pytest.approx(4 * 1e-6 / 100 * lg)
    assert b.max() == b.e2


def test_script_E_is_I_minus_J(toy_measure):
    p = OscillatoryParams(0.05, 8.0)
    assert script_E(p, toy_measure) == pytest.approx(
        eval_I_direct(p, toy_measure) - eval_J(p, toy_measure), rel=1e-14)


def test_breakdown_consistency(measure):
    b = interaction_energy(OscillatoryParams(0.01, 20.0), measure)
    assert b.W_qft == pytest.approx(b.script_E + b.vdw_baseline, rel=1e-14)
    assert b.script_E == pytest.approx(b.I - b.J, rel=1e-14)
    assert b.route_residual == pytest.approx(b.W_qft - b.W_aleph, rel=1e-14)
    assert 0 < b.retardation_ratio <= 1
    assert b.W_qft < 0
    assert isinstance(b.budget_exceeds_leading, bool)
    d = b.as_dict()
    assert d["regime"] == "crossover" and d["regime_band"] == "crossover"
    assert {"e1", "e2", "e3", "e4"} <= set(d)


GRID = [(a, L) for a in (0.01, 0.005, 0.001) for L in (2.0, 10.0, 30.0, 100.0, 300.0)]


@pytest.fixture(scope="module")
def breakdowns(measure):
    return {(a, L): interaction_energy(OscillatoryParams(a, L), measure) for a, L in GRID}


def test_route_equivalence_within_e4(breakdowns):
    # prefactor 1, frozen after one look at the alpha <= 0.01 grid
    for (a, L), b in breakdowns.items():
        assert abs(b.route_residual) <= b.error_budget.e4, (a, L)


def test_attractive_everywhere(breakdowns):
    assert all(b.W_qft < 0 for b in breakdowns.values())


def test_retardation_ratio_non_increasing(breakdowns):
    for a in (0.01, 0.005, 0.001):
        r = [breakdowns[(a, L)].retardation_ratio for L in (2.0, 10.0, 30.0, 100.0, 300.0)]
        assert all(x >= y for x, y in zip(r, r[1:]))
        assert 0 < r[-1] <= r[0] <= 1


def test_fit_power_law_exact():
    x = np.geomspace(1, 100, 9)
    p, r = fit_power_law(x, -3.5 * x**2.25)
    assert p == pytest.approx(2.25, abs=1e-12) and r < 1e-12


def test_phi_scaling_needs_two_decades(measure):
    with pytest.raises(ValueError):
        phi_sharp_norm_scaling(measure, [0.01, 0.02, 0.05], 10.0)


def test_phi_scaling_log_factor(measure):
    fit = phi_sharp_norm_scaling(measure, np.geomspace(1e-4, 1e-2, 5), 10.0)
    assert fit.exponent_log_corrected == pytest.approx(3.0, abs=0.05)
    assert fit.residual_log_corrected < fit.residual
