"""Spectral resolution of the dipole vector x u over the hydrogen Hamiltonian.

Everything is computed at unit coupling, where h = -Laplacian - 1/r has
ground energy -1/4 and ground state u(x) = exp(-|x|/2)/sqrt(8 pi).  The
coupling dependence of every expectation is restored analytically by the
callers.

The l=1 reduced radial function of the z component of x u is
phi(r) = r^2 exp(-r/2)/sqrt(6), normalised so that the three Cartesian
components together give ||x u||^2 = 12.
"""
from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal, lapack, solve_banded

GROUND_ENERGY = -0.25
SPECTRAL_GAP = 3.0 / 16.0
MIN_POINTS = 100


class SpectralError(RuntimeError):
    """Raised when the eigensolver or linear solve cannot be trusted."""


@dataclass(frozen=True)
class RadialGrid:
    """Uniform radial grid with Dirichlet ends at r=0 and r=r_max."""

    r_max: float = 200.0
    n_points: int = 20000

    def __post_init__(self):
        if not self.r_max > 0:
            raise ValueError(f"r_max must be positive, got {self.r_max}")
        if self.n_points < 2:
            raise ValueError(f"n_points must be >= 2, got {self.n_points}")

    @property
    def spacing(self) -> float:
        return self.r_max / self.n_points

    @property
    def nodes(self) -> np.ndarray:
        # interior nodes only, first node one spacing from the origin
        return self.spacing * np.arange(1, self.n_points)


@dataclass(frozen=True)
class HydrogenGroundState:
    alpha: float = 1.0

    @property
    def energy(self) -> float:
        return -self.alpha**2 / 4.0

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        r = np.linalg.norm(x, axis=-1)
        a = self.alpha
        return a**1.5 / math.sqrt(8 * math.pi) * np.exp(-a * r / 2)


def dipole_radial_function(r):
    """Reduced radial function of z*u at unit coupling."""
    r = np.asarray(r, dtype=float)
    return r**2 * np.exp(-r / 2) / math.sqrt(6.0)


def build_radial_hamiltonian(grid: RadialGrid, ell: int = 1):
    """Second-difference radial operator -d2/dr2 + l(l+1)/r^2 - 1/r.

    Returns the (diagonal, off-diagonal) pair of the symmetric tridiagonal
    matrix on the interior nodes.  ``ell=0`` is the diagnostic s-wave channel.
    """
    if grid.n_points < MIN_POINTS:
        raise ValueError(
            f"grid too coarse: n_points={grid.n_points} < {MIN_POINTS} "
            f"(r_max={grid.r_max}, spacing={grid.spacing:.4g})")
    if ell not in (0, 1):
        raise ValueError("only the l=0 and l=1 channels are supported")
    r = grid.nodes
    h2 = grid.spacing**2
    diag = 2.0 / h2 + ell * (ell + 1) / r**2 - 1.0 / r
    off = np.full(r.size - 1, -1.0 / h2)
    return diag, off


@dataclass(frozen=True, eq=False)
class SpectralMeasure:
    """Discrete measure {(lambda_n, w_n)} of x u over h - e at unit coupling.

    ``tail_lumped`` tells whether the last entry is the single atom that
    carries the part of the spectrum above ``energy_cutoff``.  It is placed so
    that both the zeroth and first moments of the discrete operator are kept.
    """

    lambdas: np.ndarray
    weights: np.ndarray
    grid: RadialGrid
    energy_cutoff: float
    tail_lumped: bool
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        for arr in (self.lambdas, self.weights):
            arr.setflags(write=False)

    def __len__(self):
        return self.lambdas.size

    def expectation(self, f) -> float:
        return expectation(self, f)

    @property
    def total_weight(self) -> float:
        return float(np.sum(self.weights))

    @property
    def first_moment(self) -> float:
        return float(np.dot(self.weights, self.lambdas))


def build_spectral_measure(grid: RadialGrid = RadialGrid(), energy_cutoff: float = 400.0,
                           chunk: int = 256) -> SpectralMeasure:
    """Diagonalise the l=1 operator and project the dipole function on it.

    Eigenvectors are only formed for eigenvalues up to ``energy_cutoff``
    (in index chunks, to bound memory).  The rest of the spectrum is replaced
    by one atom chosen so that sum(w) and sum(w*lambda) equal the discrete
    quadratic forms ||phi||^2 and <phi|H|phi> exactly.
    """
    d, e = build_radial_hamiltonian(grid, ell=1)
    h = grid.spacing
    phi = dipole_radial_function(grid.nodes)
    # bisection for the wanted window, then inverse iteration chunk by chunk
    n_keep, evals, iblock, isplit, info = lapack.dstebz(
        d, e, 1, GROUND_ENERGY - 1.0, float(energy_cutoff), 0, 0, 0.0, "B")
    if info != 0 or n_keep < 1:
        raise SpectralError(
            f"eigenvalue bisection failed (info={info}, found={n_keep}, "
            f"r_max={grid.r_max}, n_points={grid.n_points})")
    evals = evals[:n_keep]
    lam, wts = [], []
    for lo in range(0, n_keep, chunk):
        hi = min(lo + chunk, n_keep)
        w_sel = evals[lo:hi]
        ib_sel = np.zeros_like(iblock)
        ib_sel[:hi - lo] = iblock[lo:hi]
        vecs, info = lapack.dstein(d, e, w_sel, ib_sel, isplit)
        if info != 0:
            raise SpectralError(
                f"inverse iteration did not converge for {info} vectors in "
                f"indices {lo}..{hi - 1} (r_max={grid.r_max}, n_points={grid.n_points})")
        # vectors are unit in the plain l2 sense; the h factor makes them L2(dr)
        lam.append(w_sel - GROUND_ENERGY)
        wts.append(3.0 * h * (vecs.T @ phi) ** 2)
    lam = np.concatenate(lam)
    wts = np.concatenate(wts)

    hphi = d * phi
    hphi[:-1] += e * phi[1:]
    hphi[1:] += e * phi[:-1]
    norm2 = 3.0 * h * float(phi @ phi)
    moment1 = 3.0 * h * float(phi @ hphi) - GROUND_ENERGY * norm2
    w_rem = norm2 - float(np.sum(wts))
    m_rem = moment1 - float(np.dot(wts, lam))
    lumped = w_rem > 1e-14 * norm2 and m_rem > 0
    if lumped:
        lam = np.append(lam, m_rem / w_rem)
        wts = np.append(wts, w_rem)
    meta = {
        "n_eigenvectors": int(n_keep),
        "discrete_norm": norm2,
        "discrete_first_moment": moment1,
        "tail_weight": float(w_rem) if lumped else 0.0,
    }
    return SpectralMeasure(lam.copy(), wts.copy(), grid, float(energy_cutoff), bool(lumped), meta)


def expectation(measure: SpectralMeasure, f) -> float:
    """<x u | f(h - e) | x u> = sum_n w_n f(lambda_n).  ``f`` must be vectorised."""
    vals = np.asarray(f(measure.lambdas), dtype=float)
    vals = np.broadcast_to(vals, measure.lambdas.shape)
    return float(np.dot(measure.weights, vals))


def bound_state_energies(grid: RadialGrid = RadialGrid(), count: int = 3, ell: int = 1):
    """Lowest ``count`` eigenvalues of the radial operator (energies, not lambdas)."""
    d, e = build_radial_hamiltonian(grid, ell=ell)
    return eigvalsh_tridiagonal(d, e, select="i", select_range=(0, count - 1))


def dalgarno_lewis_reference(grid: RadialGrid = RadialGrid(200.0, 40000)) -> float:
    """||(h - e)^(-1/2) x u||^2 from a direct solve of (h - e) psi = phi.

    This never touches the eigenvectors, so it is an independent check of
    sum_n w_n/lambda_n.  The continuum value is the static polarisability
    sum 54 at unit coupling.
    """
    d, e = build_radial_hamiltonian(grid, ell=1)
    phi = dipole_radial_function(grid.nodes)
    ab = np.zeros((3, d.size))
    ab[0, 1:] = e
    ab[1] = d - GROUND_ENERGY
    ab[2, :-1] = e
    try:
        psi = solve_banded((1, 1), ab, phi)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise SpectralError(
            f"linear solve failed (r_max={grid.r_max}, n_points={grid.n_points})") from exc
    if not np.all(np.isfinite(psi)):
        raise SpectralError("linear solve produced non-finite values")
    return 3.0 * grid.spacing * float(phi @ psi)
