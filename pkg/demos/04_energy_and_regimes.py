# W = E_y - E_inf along a distance sweep, with the regime labels.
from atomwall import (OscillatoryParams, RadialGrid, build_spectral_measure, classify_regime,
                      interaction_energy, regime_thresholds)

alpha = 1 / 173
for name, L, lead in regime_thresholds(alpha):
    print(f"{name:18s} L = {L:8.2f}   {lead}")

m = build_spectral_measure(RadialGrid(200.0, 8000))

print()
print("     L        W_qft      -a^2/L^3    -aleph a/L^4   ratio   label")
for L in (2.0, 5.0, 10.0, 30.0, 100.0, 165.0, 170.0, 300.0, 1000.0):
    b = interaction_energy(OscillatoryParams(alpha, L), m)
    print(f"{L:7.1f}  {b.W_qft:+.4e}  {b.vdw_baseline:+.4e}  {b.W_aleph:+.4e}  "
          f"{b.retardation_ratio:.4f}  {b.regime.label}")

# eta is only meaningful inside the crossover band
r = classify_regime(alpha, 70.15)
print(r)
