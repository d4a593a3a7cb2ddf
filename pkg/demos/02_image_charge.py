# Image potential of the wall and its expectation in the ground state.
import numpy as np

from atomwall import WallGeometry, coulomb_expectation, localization_tail, potential, taylor_potential

g = WallGeometry(alpha=0.01, L=100.0)
print("wall at y =", g.y)

# on the axis towards the wall the potential dips, and is zero at the atom
x1 = np.linspace(-0.5 * g.y, 0.9 * g.y, 8)
pts = np.stack([x1, 0 * x1, 0 * x1], axis=-1)
for a, v in zip(x1, potential(g, pts)):
    print(f"  x1 = {a:9.1f}   V = {v:.4e}")

# near the atom the quadratic model is good
x = np.array([[3.0, 1.0, -2.0]])
print("exact ", potential(g, x)[0], " quadratic ", taylor_potential(g, x)[0])

# <u|alpha V|u> L^3/alpha^2 -> -1, with a 1/L^2 correction
for L in (10.0, 20.0, 50.0, 100.0, 200.0, 400.0):
    v = coulomb_expectation(WallGeometry(0.01, L)) * L**3 / 0.01**2
    print(f"  L = {L:6.0f}   {v:+.6f}")

# mass of u outside the localising ball
for L in (20.0, 50.0, 100.0):
    print(f"  L = {L:6.0f}   tail {localization_tail(WallGeometry(0.01, L)):.3e}")
