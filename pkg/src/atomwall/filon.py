"""Adaptive Filon-Legendre quadrature for int A(x) exp(i w x) dx.

On each panel the amplitude is expanded in Legendre polynomials from its
values at Gauss nodes; the moments int_{-1}^{1} P_k(t) exp(i m t) dt =
2 i^k j_k(m) are exact for any m, so the cost does not grow with the
frequency.  The size of the last two coefficients is the error estimate and
panels that fail it are bisected.  With w = 0 this is plain adaptive Gauss.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss, legvander
from scipy.special import spherical_jn


class QuadratureError(RuntimeError):
    """Raised when the requested accuracy cannot be reached."""


@lru_cache(maxsize=8)
def _rule(n):
    t, g = leggauss(n)
    # rows: coefficient k = (2k+1)/2 * sum_j g_j P_k(t_j) f_j
    proj = (legvander(t, n - 1) * g[:, None]).T * ((2 * np.arange(n) + 1) / 2)[:, None]
    return t, proj


def _moments(n, mu):
    k = np.arange(n)
    return 2.0 * (1j ** k)[None, :] * spherical_jn(k[None, :], np.abs(mu)[:, None]) * \
        np.where(mu[:, None] < 0, (-1.0) ** k[None, :], 1.0)


def filon_integrate(amplitude, breakpoints, omega=0.0, nodes=24, rtol=1e-11, atol=0.0,
                    max_panels=20000):
    """Integrate ``amplitude(x) * exp(1j*omega*x)`` over consecutive breakpoints.

    ``amplitude`` takes a 2-D array of nodes (panels x nodes) and returns
    values of the same shape, real or complex.  Returns ``(value, error,
    panel_count)``; ``value`` is complex.
    """
    edges = np.asarray(breakpoints, dtype=float)
    if edges.ndim != 1 or edges.size < 2 or np.any(np.diff(edges) <= 0):
        raise ValueError("breakpoints must be strictly increasing")
    t, proj = _rule(nodes)
    lo, hi = edges[:-1], edges[1:]
    total, err_total, floor = 0j, 0.0, None
    n_done = 0
    while lo.size:
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        vals = amplitude(mid[:, None] + half[:, None] * t[None, :])
        coef = vals @ proj.T
        mom = _moments(nodes, omega * half)
        panel = half * np.exp(1j * omega * mid) * np.sum(coef * mom, axis=1)
        err = 2 * half * (np.abs(coef[:, -1]) + np.abs(coef[:, -2]))
        scale = 2 * half * np.max(np.abs(vals), axis=1)
        if floor is None:
            floor = max(atol, 1e-6 * rtol * float(np.sum(scale)))
        ok = (err <= rtol * scale) | (err <= floor) | (half <= 1e-13 * np.abs(mid))
        total += np.sum(panel[ok])
        err_total += float(np.sum(err[ok]))
        n_done += int(np.count_nonzero(ok))
        lo, hi = lo[~ok], hi[~ok]
        if lo.size:
            m = 0.5 * (lo + hi)
            lo, hi = np.concatenate([lo, m]), np.concatenate([m, hi])
            order = np.argsort(lo, kind="stable")
            lo, hi = lo[order], hi[order]
        if n_done + lo.size > max_panels:
            raise QuadratureError(
                f"panel budget exhausted: {n_done} accepted, {lo.size} pending "
                f"(max_panels={max_panels}, rtol={rtol}, omega={omega})")
    return total, err_total, n_done
