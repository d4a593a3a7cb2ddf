# Spectral measure of the dipole vector x u over h - e, hydrogen at unit coupling.
# Run: python demos/01_hydrogen_spectrum.py   (about 15 s, the eigensolve dominates)
import numpy as np

from atomwall import (RadialGrid, bound_state_energies, build_spectral_measure,
                      dalgarno_lewis_reference)

grid = RadialGrid()          # r_max = 200, 20000 points
print("spacing", grid.spacing)

# bound p-states from the tridiagonal operator
levels = bound_state_energies(grid, 4)
exact = -1.0 / (4 * np.arange(2, 6) ** 2)
for e, x in zip(levels, exact):
    print(f"  {e:.10f}  exact {x:.10f}  diff {e - x:+.2e}")

m = build_spectral_measure(grid)
print(len(m), "atoms, last one lumped:", m.tail_lumped)
print("sum w          ", m.total_weight)        # 12
print("sum w lambda   ", m.first_moment)        # 3, minus the stencil bias h^2/16
print("   bias h^2/16 ", grid.spacing**2 / 16)

# the polarisability sum, two ways
print("sum w/lambda   ", m.expectation(lambda l: 1 / l))
print("linear solve   ", dalgarno_lewis_reference())   # 54 in the continuum limit

# where is the weight?  most of it sits in the first few levels
order = np.argsort(m.weights)[::-1][:5]
for i in order:
    print(f"  lambda {m.lambdas[i]:.6f}  w {m.weights[i]:.6f}")
