import math

import numpy as np
import pytest
import sympy as sp

from atomwall import (HydrogenGroundState, RadialGrid, SpectralError, bound_state_energies,
                      build_radial_hamiltonian, build_spectral_measure,
                      dalgarno_lewis_reference, expectation)
from atomwall.hydrogen_spectral import SPECTRAL_GAP, dipole_radial_function


def test_static_polarisability_closed_form():
    # (h - e) psi = z u with psi = z (2 + r/2) u, checked symbolically at unit coupling
    r = sp.symbols("r", positive=True)
    phi = r**2 * sp.exp(-r / 2) / sp.sqrt(6)
    psi = (2 + r / 2) * phi
    lhs = -sp.diff(psi, r, 2) + 2 / r**2 * psi - psi / r + psi / 4
    assert sp.simplify(lhs - phi) == 0
    assert sp.integrate(3 * phi * psi, (r, 0, sp.oo)) == 54
    assert sp.integrate(3 * phi**2, (r, 0, sp.oo)) == 12


def test_ground_state_normalised():
    g = HydrogenGroundState(0.3)
    assert g.energy == pytest.approx(-0.0225)
    r = np.linspace(0, 400, 200001)
    dens = g(np.stack([r, 0 * r, 0 * r], axis=-1)) ** 2 * 4 * math.pi * r**2
    assert np.trapezoid(dens, r) == pytest.approx(1.0, rel=1e-8)


def test_dipole_function_norm():
    r = np.linspace(0, 200, 400001)
    assert 3 * np.trapezoid(dipole_radial_function(r) ** 2, r) == pytest.approx(12.0, rel=1e-9)


def test_coarse_grid_rejected():
    with pytest.raises(ValueError, match="n_points=50"):
        build_radial_hamiltonian(RadialGrid(200.0, 50))


def test_bad_channel_rejected():
    with pytest.raises(ValueError):
        build_radial_hamiltonian(RadialGrid(), ell=2)


def test_bound_states_converge_with_grid():
    exact = np.array([-1 / 16, -1 / 36, -1 / 64])
    coarse = np.max(np.abs(bound_state_energies(RadialGrid(200.0, 2000)) - exact))
    fine = np.max(np.abs(bound_state_energies(RadialGrid(200.0, 8000)) - exact))
    # second order in the spacing
    assert fine < coarse / 10


def test_s_wave_ground_state():
    e = bound_state_energies(RadialGrid(), 1, ell=0)
    assert e[0] == pytest.approx(-0.25, abs=5e-6)


def test_dalgarno_lewis_near_54():
    assert dalgarno_lewis_reference() == pytest.approx(54.0, rel=1e-6)


def test_measure_shape(measure):
    assert measure.tail_lumped
    assert np.all(np.diff(measure.lambdas) >= 0)
    assert np.all(measure.weights >= 0)
    assert len(measure) == measure.lambdas.size == measure.weights.size
    with pytest.raises(ValueError):
        measure.weights[0] = 1.0


def test_zeroth_moment(measure):
    assert measure.total_weight == pytest.approx(12.0, rel=1e-6)


def test_first_moment_within_discretisation_bias(measure):
    # the three-point stencil shifts sum(w lambda) by (h^2/12) 3 int phi''^2 = h^2/16
    bias = measure.grid.spacing**2 / 16
    assert measure.first_moment == pytest.approx(3.0 - bias, abs=1e-8)


def test_lowest_lambda_is_gap(measure):
    assert measure.lambdas[0] == pytest.approx(SPECTRAL_GAP, abs=1e-6)


def test_inverse_moment_matches_linear_solve(measure):
    val = expectation(measure, lambda l: 1.0 / l)
    oracle = dalgarno_lewis_reference(RadialGrid(200.0, 20000))
    assert val == pytest.approx(oracle, rel=1e-10)


def test_expectation_constant_function(measure):
    assert expectation(measure, lambda l: 1.0) == pytest.approx(measure.total_weight)


def test_coarse_measure_misses_sum_rule(coarse_measure):
    assert abs(coarse_measure.first_moment - 3.0) / 3.0 > 1e-6


def test_measure_deterministic():
    a = build_spectral_measure(RadialGrid(100.0, 1500))
    b = build_spectral_measure(RadialGrid(100.0, 1500))
    assert np.array_equal(a.lambdas, b.lambdas)
    assert np.array_equal(a.weights, b.weights)


def test_spectral_error_is_runtime_error():
    assert issubclass(SpectralError, RuntimeError)
