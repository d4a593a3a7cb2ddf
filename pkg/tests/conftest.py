import numpy as np
import pytest

from atomwall import RadialGrid, build_spectral_measure
from atomwall.cli_reports import cached_measure
from atomwall.hydrogen_spectral import SpectralMeasure


@pytest.fixture(scope="session")
def measure():
    # default grid, built once (about 15 s) and shared with the CLI cache
    g = RadialGrid()
    return cached_measure(g.r_max, g.n_points, 400.0)


@pytest.fixture(scope="session")
def coarse_measure():
    return build_spectral_measure(RadialGrid(200.0, 4000))


@pytest.fixture
def toy_measure():
    """Two atoms, small enough for an independent quadrature of every bracket."""
    return SpectralMeasure(np.array([0.5, 3.0]), np.array([1.0, 2.0]), RadialGrid(),
                           400.0, False)
