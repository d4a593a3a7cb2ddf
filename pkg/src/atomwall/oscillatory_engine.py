"""Momentum-space integrals of the wall problem.

All integrals reduce to one radial variable rho = |k| after the angular
integral, which produces the kernel

    K(rho, y) = int_0^pi sin(t) cos(t)^2 cos(2 rho y cos(t)) dt
              = sin(2s)/s + cos(2s)/s^2 - sin(2s)/(2 s^3),   s = rho*y.

Normalisation.  ``coupling_scale`` multiplies every transverse-photon
integral.  With the literal one-photon form factor (``coupling_scale=1``)
the residue at rho=0 gives 2 alpha^2/L^3, twice the Coulomb image term it
must cancel; the default 0.5 is the usual QED mode normalisation, which makes
the arc term exactly alpha^2/L^3 and the imaginary-axis kernel
(2v^2+2v+1)exp(-2v)/(6 pi).  See the decisions ledger for the derivation.

Coupling dependence.  Brackets over the hydrogen states scale as
<x u_a|F(h_a - e_a)|x u_a> = a^-2 sum_n w_n F(a^2 lambda_n), so that with
S(rho) = sum w lambda/(a^2 lambda + rho) and S2(rho) = sum w lambda^2/(a^2 lambda + rho)

    I   = -c (2a/3pi)    int rho^2 chi^2 S  K drho
    J   = -c (22a^3/3pi) int rho   chi^2 S2 K drho
    a int f_y dk = -c (2a/pi) int rho chi^2 K drho

where c is ``coupling_scale``.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
import math

import numpy as np
from scipy.integrate import quad

from .filon import QuadratureError, filon_integrate
from .hydrogen_spectral import SpectralMeasure

SERIES_SWITCH = 0.5
SERIES_TERMS = 12
OSC_START = 1.0          # rho*y above which the oscillatory (Filon) form is used
LITERAL_COUPLING = 1.0
STANDARD_COUPLING = 0.5

__all__ = [
    "CutoffProfile", "OscillatoryParams", "QuadratureError", "f_weight", "angular_kernel",
    "angular_kernel_quadrature", "eval_I_direct", "eval_I_contour", "eval_J",
    "eval_I_panels", "aleph", "lambda_norm_difference", "phi_sharp_norm",
    "combined_bracket_integral", "cutoff_gap",
]


def _smooth_step(t):
    """C-infinity step from 0 (t<=0) to 1 (t>=1)."""
    t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        a = np.where(t > 0, np.exp(-1.0 / np.where(t > 0, t, 1.0)), 0.0)
        b = np.where(t < 1, np.exp(-1.0 / np.where(t < 1, 1.0 - t, 1.0)), 0.0)
    return a / (a + b)


_VARIANTS = {"bump": "bump", "paper_bump": "bump", "exp": "exp", "exponential": "exp"}


@dataclass(frozen=True)
class CutoffProfile:
    """Ultraviolet cutoff chi_Lambda.

    ``bump``: equal to 1 below Lambda/2, 0 above Lambda, smooth monotone in
    between.  ``exp``: exp(-rho/Lambda), analytic in the right half-plane.
    """

    variant: str = "bump"
    scale: float = 1.0

    def __post_init__(self):
        if self.variant not in _VARIANTS:
            raise ValueError(f"unknown cutoff variant {self.variant!r}")
        object.__setattr__(self, "variant", _VARIANTS[self.variant])
        if not self.scale > 0:
            raise ValueError("cutoff scale must be positive")

    @property
    def analytic(self) -> bool:
        return self.variant == "exp"

    def __call__(self, rho):
        rho = np.asarray(rho, dtype=float)
        if self.variant == "exp":
            return np.exp(-rho / self.scale)
        return 1.0 - _smooth_step((rho - self.scale / 2) / (self.scale / 2))

    def squared(self, rho):
        return self(rho) ** 2

    def squared_on_imaginary_axis(self, u):
        """chi^2(i u) for the analytic variant (complex)."""
        if self.variant != "exp":
            raise ValueError("only the exponential cutoff continues analytically")
        return np.exp(-2j * np.asarray(u, dtype=float) / self.scale)

    @property
    def support_end(self) -> float:
        # exp(-2 rho/Lambda) < 1e-30 beyond 35 Lambda
        return self.scale if self.variant == "bump" else 35.0 * self.scale

    @property
    def breakpoints(self):
        s = self.scale
        if self.variant == "bump":
            return [s / 2, 0.75 * s, s]
        return list(s * np.arange(0.5, 35.0, 0.5))


@dataclass(frozen=True)
class OscillatoryParams:
    alpha: float
    L: float
    cutoff: CutoffProfile = CutoffProfile()
    rtol: float = 1e-11
    nodes: int = 24
    coupling_scale: float = STANDARD_COUPLING

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not self.L > 1:
            raise ValueError(f"L must exceed 1, got {self.L}")
        if not self.rtol > 0:
            raise ValueError("rtol must be positive")

    @property
    def y(self) -> float:
        return self.L / self.alpha

    def with_cutoff(self, cutoff):
        return replace(self, cutoff=cutoff)


# ---------------------------------------------------------------- kernels

def f_weight(params: OscillatoryParams, k):
    """Literal integrand f_y(k) of alpha(||lambda_y||^2 - ||lambda_inf||^2)."""
    k = np.asarray(k, dtype=float)
    r = np.linalg.norm(k, axis=-1)
    if np.any(r == 0):
        raise ValueError("f_weight is singular at k = 0")
    kh = k / r[..., None]
    ang = -1.0 - kh[..., 0] ** 2 + kh[..., 1] ** 2 + kh[..., 2] ** 2
    return params.cutoff.squared(r) / r * ang * np.cos(2 * k[..., 0] * params.y) / (2 * math.pi**2)


# K = sum_j (-1)^j (2s)^(2j)/(2j)! * 2/(2j+3)
_SERIES_C = np.array([(-1) ** j / math.factorial(2 * j) * 2.0 / (2 * j + 3)
                      for j in range(SERIES_TERMS)])


def _kernel_of_sigma(s):
    s = np.asarray(s, dtype=float)
    out = np.empty_like(s)
    small = np.abs(s) < SERIES_SWITCH
    if np.any(small):
        z = (2 * s[small]) ** 2
        out[small] = np.polynomial.polynomial.polyval(z, _SERIES_C)
    big = ~small
    if np.any(big):
        sb = s[big]
        s2 = np.sin(2 * sb)
        out[big] = s2 / sb + np.cos(2 * sb) / sb**2 - s2 / (2 * sb**3)
    return out


def angular_kernel(rho, y):
    """K(rho, y); a Taylor series replaces the closed form for rho*y < 0.5."""
    rho = np.asarray(rho, dtype=float)
    return _kernel_of_sigma(rho * y)


def angular_kernel_quadrature(rho, y):
    """Direct theta quadrature of K, used as the reference for the closed form."""
    w = 2 * rho * y
    val, _ = quad(lambda t: t * t, -1.0, 1.0, weight="cos", wvar=w, epsabs=1e-15, epsrel=1e-13)
    return val


def _envelope(sigma):
    """Complex amplitude E with K = 2 Re[E exp(2 i sigma)] (sigma away from 0)."""
    return -0.5j / sigma + 0.5 / sigma**2 + 0.25j / sigma**3


# ---------------------------------------------------------------- radial engine

def _radial_breakpoints(params, scales):
    cut = params.cutoff
    end = cut.support_end
    y = params.y
    s0 = OSC_START / y
    start = 1e-3 * min([s0, cut.scale] + [s for s in scales if s > 0])
    pts = [0.0, s0] + list(np.geomspace(start, end, max(2, int(np.ceil(np.log2(end / start))) + 1)))
    pts += cut.breakpoints
    pts = np.unique(np.asarray([p for p in pts if 0 <= p <= end]))
    return pts


def radial_kernel_integral(params, weight, scales=()):
    """int_0^inf weight(rho) chi^2(rho) K(rho, y) drho.

    ``weight`` is a vectorised smooth real function of rho; ``scales`` are
    the rho values where it changes character (used to grade the panels).
    """
    y = params.y
    chi2 = params.cutoff.squared
    pts = _radial_breakpoints(params, scales)
    s0 = OSC_START / y
    near, far = pts[pts <= s0], pts[pts >= s0]
    total, err, panels = 0.0, 0.0, 0
    if near.size >= 2:
        v, e, n = filon_integrate(lambda r: weight(r) * chi2(r) * _kernel_of_sigma(r * y),
                                  near, 0.0, params.nodes, params.rtol)
        total += v.real
        err += e
        panels += n
    if far.size >= 2:
        v, e, n = filon_integrate(lambda r: 2 * weight(r) * chi2(r) * _envelope(r * y),
                                  far, 2 * y, params.nodes, params.rtol)
        total += v.real
        err += e
        panels += n
    return total, err, panels


def _measure_arrays(measure, alpha):
    lam = np.asarray(measure.lambdas)
    return lam, np.asarray(measure.weights), alpha**2 * lam


def _S(measure, alpha, power=1):
    lam, w, a2l = _measure_arrays(measure, alpha)
    wl = w * lam**power

    def S(rho):
        shape = np.shape(rho)
        r = np.ravel(rho)
        return (1.0 / (a2l[None, :] + r[:, None]) @ wl).reshape(shape)
    return S


def _scales(measure, alpha):
    return [alpha**2 * float(np.min(measure.lambdas)), alpha**2 * float(np.max(measure.lambdas))]


def eval_I_direct(params: OscillatoryParams, measure: SpectralMeasure, return_error=False):
    """First bracket integral I by direct quadrature on the real rho axis."""
    a = params.alpha
    S = _S(measure, a, 1)
    val, err, n = radial_kernel_integral(params, lambda r: r * r * S(r), _scales(measure, a))
    c = -params.coupling_scale * 2 * a / (3 * math.pi)
    return (c * val, abs(c) * err) if return_error else c * val


def eval_J(params: OscillatoryParams, measure: SpectralMeasure, return_error=False):
    """Second bracket integral (the 11(h-e)^2 term), including its -22a^3/3pi prefactor."""
    a = params.alpha
    S2 = _S(measure, a, 2)
    val, err, n = radial_kernel_integral(params, lambda r: r * S2(r), _scales(measure, a))
    c = -params.coupling_scale * 22 * a**3 / (3 * math.pi)
    return (c * val, abs(c) * err) if return_error else c * val


def combined_bracket_integral(params: OscillatoryParams, measure: SpectralMeasure):
    """a int f_y (1 - 4G) dk as one quadrature; equals I - J when sum w lambda = 3."""
    a = params.alpha
    S2 = _S(measure, a, 2)
    val, _, _ = radial_kernel_integral(params, lambda r: r * (1.0 - 4 * a * a * S2(r)),
                                       _scales(measure, a))
    return -params.coupling_scale * 2 * a / math.pi * val


def lambda_norm_difference(params: OscillatoryParams, return_error=False):
    """a(||lambda_y||^2 - ||lambda_inf||^2) = a int f_y dk."""
    val, err, _ = radial_kernel_integral(params, lambda r: r)
    c = -params.coupling_scale * 2 * params.alpha / math.pi
    return (c * val, abs(c) * err) if return_error else c * val


def phi_sharp_norm(params: OscillatoryParams, measure: SpectralMeasure, free=False):
    """||Phi_#^y||^2 (or the free-space norm with ``free=True``).

    4a int_{k1>0} |(h-e+|k|)^-1 P u lambda_y(k)|^2 dk with P u = i(h-e) x u,
    reduced to (8a^3/3pi) int rho chi^2 sum w lambda^2/(a^2 lambda+rho)^2 (2 - K).
    """
    a = params.alpha
    lam, w, a2l = _measure_arrays(measure, a)
    wl2 = w * lam**2

    def G2(rho):
        shape = np.shape(rho)
        r = np.ravel(rho)
        return (1.0 / (a2l[None, :] + r[:, None]) ** 2 @ wl2).reshape(shape)

    c = params.coupling_scale * 8 * a**3 / (3 * math.pi)
    cut = params.cutoff
    pts = _radial_breakpoints(params, _scales(measure, a))
    const, _, _ = filon_integrate(lambda r: 2 * r * G2(r) * cut.squared(r), pts, 0.0,
                                  params.nodes, params.rtol)
    if free:
        return c * const.real
    osc, _, _ = radial_kernel_integral(params, lambda r: r * G2(r), _scales(measure, a))
    return c * (const.real - osc)


# ---------------------------------------------------------------- contour route

def _imag_axis_amplitude(params, measure, u):
    """Re[i chi^2(iu) S(iu)] for the analytic cutoff, chi^2 real as-if otherwise."""
    a = params.alpha
    lam, w, a2l = _measure_arrays(measure, a)
    den = a2l[None, :] ** 2 + u[:, None] ** 2
    R = (1.0 / den) @ (w * lam) * u
    if params.cutoff.analytic:
        Q = (1.0 / den) @ (w * lam * a2l)
        ph = 2 * u / params.cutoff.scale
        return np.cos(ph) * R + np.sin(ph) * Q
    # formal continuation: the bump is evaluated at the real point u
    return params.cutoff.squared(u) * R


def eval_I_contour(params: OscillatoryParams, measure: SpectralMeasure, v_max=40.0):
    """(arc_term, imaginary_axis_term) of the deformed contour.

    For the analytic exponential cutoff the sum equals ``eval_I_direct``.  For
    the bump the cutoff is evaluated at the real point, as in the formal
    argument; the mismatch is reported by ``cutoff_gap``.
    """
    a, L, y = params.alpha, params.L, params.y
    c = -params.coupling_scale * 2 * a / (3 * math.pi)
    arc = params.coupling_scale * a**2 / L**3 * measure.total_weight / 6.0
    lam_min = float(np.min(measure.lambdas)) * a**2
    lam_max = float(np.max(measure.lambdas)) * a**2
    u_max = v_max / y
    start = 1e-3 * min(lam_min, u_max)
    pts = [0.0] + list(np.geomspace(start, u_max, max(2, int(np.ceil(np.log2(u_max / start))) + 1)))
    if lam_max < u_max:
        pts.append(lam_max)
    if params.cutoff.variant == "bump":
        pts += [p for p in params.cutoff.breakpoints if p < u_max]
    pts = np.unique(pts)

    def integrand(u):
        shape = u.shape
        uu = u.ravel()
        v = uu * y
        poly = 2 * v * v + 2 * v + 1
        with np.errstate(invalid="ignore", divide="ignore"):
            amp = _imag_axis_amplitude(params, measure, uu) / uu
        amp = np.where(uu > 0, amp, 0.0)
        return (amp * poly * np.exp(-2 * v)).reshape(shape)

    val, _, _ = filon_integrate(integrand, pts, 0.0, params.nodes, params.rtol)
    imag = c / (2 * y**3) * val.real
    return arc, imag


def imaginary_axis_restricted(params: OscillatoryParams, measure: SpectralMeasure, v_upper=1.0):
    """-(a^3/6pi L^4) int_0^v_upper T(v) dv with chi = 1 and the polynomial dropped.

    With T(v) = sum w lambda/(a^2 lambda^2 + v^2/L^2) this is -(a/L^4) aleph
    exactly when v_upper = 1.
    """
    a, L = params.alpha, params.L
    lam, w, _ = _measure_arrays(measure, a)

    def T(v):
        shape = v.shape
        vv = v.ravel()
        return ((1.0 / (a**2 * lam[None, :] ** 2 + (vv[:, None] / L) ** 2)) @ (w * lam)).reshape(shape)

    pts = np.unique(np.concatenate([[0.0], np.geomspace(1e-3 * min(v_upper, a * L * lam.min()),
                                                        v_upper, 40)]))
    val, _, _ = filon_integrate(T, pts, 0.0, params.nodes, params.rtol)
    return -params.coupling_scale * 2 * a**3 / (6 * math.pi * L**4) * val.real


def cutoff_gap(params: OscillatoryParams, measure: SpectralMeasure):
    """Direct minus contour value of I for the given cutoff (zero if analytic)."""
    arc, imag = eval_I_contour(params, measure)
    return eval_I_direct(params, measure) - (arc + imag)


# ---------------------------------------------------------------- aleph

def aleph(params: OscillatoryParams, measure: SpectralMeasure) -> float:
    """(1/6pi) sum w a L arctan(1/(a L lambda))."""
    s = params.alpha * params.L
    return aleph_of_product(s, measure)


def aleph_of_product(s, measure: SpectralMeasure) -> float:
    lam = np.asarray(measure.lambdas)
    return float(np.dot(measure.weights, s * np.arctan(1.0 / (s * lam)))) / (6 * math.pi)


# ---------------------------------------------------------------- cross-check

def eval_I_panels(params: OscillatoryParams, measure: SpectralMeasure, max_panels=200000):
    """I by composite Gauss panels of half-period width pi/(2y), no Filon.

    Only practical for moderate y; kept as an independent check of the
    Filon route.
    """
    a, y = params.alpha, params.y
    S = _S(measure, a, 1)
    end = params.cutoff.support_end
    width = math.pi / (2 * y)
    n = int(math.ceil(end / width))
    if n > max_panels:
        raise QuadratureError(f"{n} half-period panels exceed the budget {max_panels}")
    t, g = np.polynomial.legendre.leggauss(params.nodes)
    total = 0.0
    for lo in range(0, n, 4096):
        e0 = np.arange(lo, min(lo + 4096, n)) * width
        x = e0[:, None] + width * (t[None, :] + 1) / 2
        f = x * x * S(x) * params.cutoff.squared(x) * _kernel_of_sigma(x * y)
        total += float(np.sum(f @ g)) * width / 2
    return -params.coupling_scale * 2 * a / (3 * math.pi) * total
