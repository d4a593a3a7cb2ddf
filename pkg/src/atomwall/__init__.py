"""Atom-wall interaction energy with retardation, in the dipole one-photon model."""
from .filon import QuadratureError, filon_integrate
from .hydrogen_spectral import (HydrogenGroundState, RadialGrid, SpectralError, SpectralMeasure,
                                bound_state_energies, build_radial_hamiltonian,
                                build_spectral_measure, dalgarno_lewis_reference, expectation)
from .image_charge import (WallGeometry, coulomb_expectation, localization_tail, potential,
                           potential_split, taylor_potential)
from .interaction_energy import (EnergyBreakdown, classify_regime, interaction_energy,
                                 phi_sharp_norm_scaling, regime_thresholds, script_E)
from .oscillatory_engine import (CutoffProfile, OscillatoryParams, aleph, angular_kernel,
                                 eval_I_contour, eval_I_direct, eval_J, f_weight,
                                 lambda_norm_difference, phi_sharp_norm)

__version__ = "0.1.0"
