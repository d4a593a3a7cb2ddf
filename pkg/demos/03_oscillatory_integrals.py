# The bracket integrals I and J, and the contour-deformed form of I.
import math

import numpy as np

from atomwall import (CutoffProfile, OscillatoryParams, RadialGrid, aleph, angular_kernel,
                      build_spectral_measure, eval_I_contour, eval_I_direct, eval_J)
from atomwall.oscillatory_engine import angular_kernel_quadrature, eval_I_panels

# the angular kernel: series below rho*y = 0.5, closed form above
for s in (1e-3, 0.3, 0.7, 5.0, 80.0):
    print(f"  K({s}) = {angular_kernel(s, 1.0):+.15f}   quad {angular_kernel_quadrature(s, 1.0):+.15f}")

# a coarser grid keeps this demo quick; the default one is used by the CLI
m = build_spectral_measure(RadialGrid(200.0, 8000))

p = OscillatoryParams(alpha=0.1, L=5.0)
print("I (Filon)        ", eval_I_direct(p, m))
print("I (half periods) ", eval_I_panels(p, m))

# with exp(-rho/Lambda) the cutoff continues to the imaginary axis
for L in (5.0, 20.0, 100.0):
    q = OscillatoryParams(0.01, L, CutoffProfile("exp", 1.0))
    I = eval_I_direct(q, m)
    arc, imag = eval_I_contour(q, m)
    print(f"  L={L:5.0f}  I {I:.12e}  arc+imag {arc + imag:.12e}  arc/(a^2/L^3) {arc * L**3 / 1e-4:.6f}")

# J is much smaller and falls like alpha^3/L^2 once alpha L is large
for a in (1e-3, 1e-2, 1e-1):
    print(f"  alpha={a:g}  J(L=1e5) = {eval_J(OscillatoryParams(a, 1e5), m):.4e}")

# van der Waals cancellation: a^2/L^3 - E is the retarded piece
a, L = 0.005, 50.0
q = OscillatoryParams(a, L)
E = eval_I_direct(q, m) - eval_J(q, m)
print("(a^2/L^3 - E) L^4/a =", (a**2 / L**3 - E) * L**4 / a, " aleph =", aleph(q, m))
