"""Image-charge potential of a grounded wall at x1 = y and its expectations.

The atom sits at the origin, the wall is the plane x1 = y with y = L/alpha,
and x~ = (2y - x1, x2, x3) is the mirror image of the electron.  Note that
|x - 2y e1| = |x~|, so the potential only depends on x1 and x2^2 + x3^2.
"""
from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np
from numpy.polynomial.legendre import leggauss

__all__ = [
    "WallGeometry", "potential", "potential_split", "taylor_potential",
    "coulomb_expectation", "localization_tail", "smoothstep_cutoff",
]


@dataclass(frozen=True)
class WallGeometry:
    alpha: float
    L: float

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not self.L > 1:
            raise ValueError(f"L must exceed 1, got {self.L}")

    @property
    def y(self) -> float:
        return self.L / self.alpha


def _split_coords(geom, x):
    x = np.asarray(x, dtype=float)
    x1 = x[..., 0]
    if np.any(x1 >= geom.y):
        raise ValueError("points must satisfy x1 < y (atom side of the wall)")
    perp2 = np.sum(x[..., 1:] ** 2, axis=-1)
    return x1, perp2


def _terms(y, x1, perp2):
    """(V_far, V_near): V_near = -1/(2|x~ - x|), V_far = the remaining part."""
    img = np.sqrt((2 * y - x1) ** 2 + perp2)
    v_near = -1.0 / (4.0 * (y - x1))
    v_far = 0.5 * (-0.5 / y + 2.0 / img)
    return v_far, v_near


def potential(geom: WallGeometry, x):
    """V_y(x) = (1/2)(-1/(2y) + 1/|x~| + 1/|x - 2y| - 1/|x~ - x|)."""
    x1, perp2 = _split_coords(geom, x)
    v_far, v_near = _terms(geom.y, x1, perp2)
    return v_far + v_near


def potential_split(geom: WallGeometry, x):
    """(V^>, V^<) with V^> = -1/(2|x~ - x|) and V^< = V - V^>."""
    x1, perp2 = _split_coords(geom, x)
    v_far, v_near = _terms(geom.y, x1, perp2)
    return v_near, v_far


def taylor_potential(geom: WallGeometry, x):
    """Quadratic model -((x.e1)^2 + |x|^2)/(16 y^3)."""
    x = np.asarray(x, dtype=float)
    return -(x[..., 0] ** 2 + np.sum(x**2, axis=-1)) / (16 * geom.y**3)


def smoothstep_cutoff(r, r_in, r_out):
    """C^1 cutoff: 1 for r <= r_in, 0 for r >= r_out, cubic smoothstep between."""
    t = np.clip((np.asarray(r, dtype=float) - r_in) / (r_out - r_in), 0.0, 1.0)
    return 1.0 - t * t * (3 - 2 * t)


def _density(alpha, r):
    # |u_alpha|^2
    return alpha**3 / (8 * math.pi) * np.exp(-alpha * r)


def coulomb_expectation(geom: WallGeometry, nodes=48, radial_panels=None):
    """<u | chi_y alpha V_y | u> by 2-D quadrature over (r, cos theta).

    The plain half-space integral diverges logarithmically at the wall (V
    behaves like -1/(4 distance) there while u does not vanish), so the
    localised form with chi_y supported in |x| <= y/3 is the one computed.
    The integrand is smooth on that ball; radial panels are Gauss-Legendre
    in s = alpha r, truncated at 60/alpha.
    """
    a, y = geom.alpha, geom.y
    r_end = min(60.0 / a, y / 3)
    r_in = y / 4
    if radial_panels is None:
        edges = np.unique(np.concatenate([
            np.linspace(0.0, min(r_in, r_end), 33),
            np.linspace(min(r_in, r_end), r_end, 9)]))
    else:
        edges = np.linspace(0.0, r_end, radial_panels + 1)
    t, g = leggauss(nodes)
    mu, gm = leggauss(nodes)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        r = 0.5 * (lo + hi) + 0.5 * (hi - lo) * t
        wr = 0.5 * (hi - lo) * g
        x1 = r[:, None] * mu[None, :]
        perp2 = (r**2)[:, None] * (1 - mu**2)[None, :]
        v_far, v_near = _terms(y, x1, perp2)
        ang = (v_far + v_near) @ gm
        dens = _density(a, r) * smoothstep_cutoff(r, r_in, y / 3) * 2 * math.pi * r**2
        total += float(np.dot(wr, dens * ang))
    return a * total


def localization_tail(geom: WallGeometry, chi_is_one=False, nodes=64):
    """||u_alpha (1 - chi_y)||^2 with the smoothstep between y/4 and y/3.

    In s = alpha r this is (1/2) int s^2 exp(-s) (1 - chi)^2 ds, which only
    depends on L.  ``chi_is_one`` is the degenerate cutoff equal to one.
    """
    if chi_is_one:
        return 0.0
    L = geom.L
    t, g = leggauss(nodes)
    s_in, s_out = L / 4, L / 3
    s = 0.5 * (s_in + s_out) + 0.5 * (s_out - s_in) * t
    w = 0.5 * (s_out - s_in) * g
    chi = smoothstep_cutoff(s, s_in, s_out)
    ramp = 0.5 * float(np.dot(w, s**2 * np.exp(-s) * (1 - chi) ** 2))
    # int_{s_out}^inf s^2 e^{-s} ds = e^{-s_out}(s_out^2 + 2 s_out + 2)
    outer = 0.5 * math.exp(-s_out) * (s_out**2 + 2 * s_out + 2)
    return ramp + outer
