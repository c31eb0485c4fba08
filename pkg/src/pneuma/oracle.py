"""Numerical machinery that checks the closed forms independently.

Nothing here evaluates closed-form trajectories; callers pass in sampled
initial data or a callable wavefunction under test.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate
from scipy.linalg import solve_banded

from .states import LegacyParams, ModernInitialData


class QuadratureError(RuntimeError):
    def __init__(self, message, estimate, error):
        super().__init__(f"{message} (estimate={estimate!r}, error={error!r})")
        self.estimate = estimate
        self.error = error


class BoundaryLeakError(RuntimeError):
    pass


@dataclass(frozen=True)
class Grid1D:
    x_min: float
    x_max: float
    n: int

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ValueError("x_min must be < x_max")
        if self.n < 16:
            raise ValueError("grid needs at least 16 points")

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n)

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n - 1)


@dataclass(frozen=True)
class ResidualReport:
    max_abs_residual: float
    step_h: float
    observed_order: float


def quadrature(f: Callable[[float], float], a: float, b: float, tol: float = 1e-12,
               limit: int = 500) -> float:
    """Adaptive Gauss-Kronrod integral of ``f`` over ``[a, b]`` to absolute ``tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    value, err, info = integrate.quad(f, a, b, epsabs=tol, epsrel=0.0, limit=limit,
                                      full_output=True)[:3]
    if err > tol:
        raise QuadratureError(f"no convergence after {info['last']} subintervals", value, err)
    return value


# --- Schroedinger residual -------------------------------------------------

def _as_wavefunction(state) -> Callable:
    from . import wavefunctions as wf

    if isinstance(state, ModernInitialData):
        return lambda x, t: wf.psi(x, state, t)
    if isinstance(state, LegacyParams):
        return lambda x, t: wf.psi_legacy(x, state, t)
    if callable(state):
        return state
    raise TypeError(f"cannot build a wavefunction from {type(state).__name__}")


def _residual(f, x, t, h):
    x = np.asarray(x, dtype=float)
    psi_t = (f(x, t + h) - f(x, t - h)) / (2 * h)
    centre = f(x, t)
    psi_xx = (f(x + h, t) - 2 * centre + f(x - h, t)) / h**2
    return 2j * psi_t + psi_xx - x**2 * centre


def schrodinger_residual(state, x, t, h: float = 1e-3) -> ResidualReport:
    """Central-difference residual of ``2i psi_t + psi_xx - x^2 psi``.

    ``state`` is initial data in either parametrization or a callable
    ``psi(x, t)``. The order estimate compares steps ``h`` and ``h/2``.
    """
    if not 1e-6 <= h <= 1e-2:
        raise ValueError("h must lie in [1e-6, 1e-2]")
    f = _as_wavefunction(state)
    coarse = float(np.max(np.abs(_residual(f, x, t, h))))
    fine = float(np.max(np.abs(_residual(f, x, t, h / 2))))
    order = np.log2(coarse / fine) if fine > 0 and coarse > 0 else float("nan")
    return ResidualReport(coarse, h, float(order))


# --- Crank-Nicolson --------------------------------------------------------

_STENCILS = {
    2: np.array([1.0, -2.0, 1.0]),
    4: np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0,
}


def hamiltonian_bands(grid: Grid1D, stencil: int = 4) -> np.ndarray:
    """Diagonals of ``H = -d^2/dx^2 + x^2`` (Dirichlet) in ``solve_banded`` layout."""
    coeffs = _STENCILS[stencil]
    w = len(coeffs) // 2
    h2 = grid.spacing**2
    bands = np.zeros((2 * w + 1, grid.n))
    for row, c in enumerate(coeffs):
        offset = w - row
        value = -c / h2
        if offset >= 0:
            bands[row, offset:] = value
        else:
            bands[row, :offset] = value
    bands[w] += grid.x**2
    return bands


def _banded_matvec(bands: np.ndarray, vec: np.ndarray) -> np.ndarray:
    w = bands.shape[0] // 2
    out = bands[w] * vec
    for k in range(1, w + 1):
        out[:-k] += bands[w - k, k:] * vec[k:]
        out[k:] += bands[w + k, :-k] * vec[:-k]
    return out


def crank_nicolson_propagate(psi: np.ndarray, grid: Grid1D, dt: float, t_final: float,
                             stencil: int = 4, leak_tol: float = 1e-8) -> np.ndarray:
    """Propagate sampled ``psi`` under ``2i psi_t = (-d^2/dx^2 + x^2) psi``.

    The step is adjusted down so that an integer number of steps lands on
    ``t_final``. ``stencil`` selects the 3-point (2) or 5-point (4) Laplacian;
    both give a real symmetric operator, so the update is unitary.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if stencil not in _STENCILS:
        raise ValueError(f"stencil must be one of {sorted(_STENCILS)}")
    psi = np.array(psi, dtype=complex)
    if psi.shape != (grid.n,):
        raise ValueError("psi must be sampled on the grid")
    nsteps = max(1, int(round(t_final / dt)))
    dt = t_final / nsteps

    h_bands = hamiltonian_bands(grid, stencil)
    w = h_bands.shape[0] // 2
    # (2i/dt - H/2) psi_new = (2i/dt + H/2) psi_old
    lhs = -0.5 * h_bands.astype(complex)
    lhs[w] += 2j / dt
    rhs = 0.5 * h_bands.astype(complex)
    rhs[w] += 2j / dt

    edge = slice(None, w), slice(-w, None)
    for step in range(nsteps + 1):
        leak = max(np.max(np.abs(psi[edge[0]])), np.max(np.abs(psi[edge[1]])))
        if leak > leak_tol:
            raise BoundaryLeakError(
                f"|psi| = {leak:.3e} at grid edge at t = {step * dt:.6g}; widen the grid")
        if step == nsteps:
            break
        psi = solve_banded((w, w), lhs, _banded_matvec(rhs, psi), check_finite=False)
    return psi


def l2_norm(psi: np.ndarray, grid: Grid1D) -> float:
    return float(np.sqrt(np.sum(np.abs(psi) ** 2) * grid.spacing))


# --- transforms and moments ------------------------------------------------

def _wavenumbers(grid: Grid1D) -> np.ndarray:
    return 2 * np.pi * np.fft.fftfreq(grid.n, grid.spacing)


def wigner_transform_numeric(psi: np.ndarray, grid: Grid1D, x: float, p) -> np.ndarray:
    """Wigner function of sampled ``psi`` at position ``x`` and momenta ``p``.

    ``psi`` is shifted spectrally so that ``x`` falls on a node, then the
    ``y`` integral is a trapezoid sum with step equal to the grid spacing.
    """
    xs = grid.x
    h = grid.spacing
    if not xs[0] <= x <= xs[-1]:
        raise ValueError(f"x = {x} outside grid [{grid.x_min}, {grid.x_max}]")
    m = int(round((x - grid.x_min) / h))
    delta = x - xs[m]
    shifted = np.fft.ifft(np.fft.fft(psi) * np.exp(1j * _wavenumbers(grid) * delta))
    kmax = min(m, grid.n - 1 - m)
    k = np.arange(-kmax, kmax + 1)
    prod = np.conj(shifted[m + k]) * shifted[m - k]
    p = np.atleast_1d(np.asarray(p, dtype=float))
    phases = np.exp(2j * np.outer(p, k * h))
    values = (phases @ prod).real * h / np.pi
    return values if values.size > 1 else values[0]


def momentum_amplitude_numeric(psi: np.ndarray, grid: Grid1D, p) -> np.ndarray:
    """``(2 pi)^(-1/2) int psi(x) exp(-ipx) dx`` by direct summation."""
    p = np.atleast_1d(np.asarray(p, dtype=float))
    kernel = np.exp(-1j * np.outer(p, grid.x))
    return kernel @ psi * grid.spacing / np.sqrt(2 * np.pi)


def numeric_moments(psi: np.ndarray, grid: Grid1D):
    """First and second moments of sampled ``psi``; momentum via spectral derivative."""
    from .wavefunctions import GaussianMoments

    h = grid.spacing
    x = grid.x
    dpsi = np.fft.ifft(1j * _wavenumbers(grid) * np.fft.fft(psi))
    p_psi = -1j * dpsi
    norm = np.sum(np.abs(psi) ** 2) * h
    mean_x = np.sum(x * np.abs(psi) ** 2) * h / norm
    mean_p = np.real(np.sum(np.conj(psi) * p_psi) * h) / norm
    var_x = np.sum((x - mean_x) ** 2 * np.abs(psi) ** 2) * h / norm
    var_p = np.sum(np.abs(p_psi) ** 2) * h / norm - mean_p**2
    # Re<x p> is the symmetrized <(xp + px)/2>
    sym_xp = np.real(np.sum(np.conj(psi) * x * p_psi) * h) / norm
    cov = sym_xp - mean_x * mean_p
    return GaussianMoments(float(mean_x), float(mean_p), float(var_x), float(var_p), float(cov))


def contour_axis_ratio(density: Callable, center, level: float = 0.5, n_rays: int = 72) -> float:
    """Axis ratio of the level set ``density = level * density(center)``.

    Contour points are found by root bracketing along rays from the centre and
    fitted with a least-squares conic ``A x^2 + B xy + C y^2 + D x + E y = 1``.
    """
    from scipy.optimize import brentq

    cx, cy = center
    peak = density(cx, cy)
    target = level * peak
    pts = []
    for ang in np.linspace(0, 2 * np.pi, n_rays, endpoint=False):
        dx, dy = np.cos(ang), np.sin(ang)
        g = lambda s: density(cx + s * dx, cy + s * dy) - target
        hi = 1.0
        while g(hi) > 0:
            hi *= 2
        s = brentq(g, 0.0, hi, xtol=1e-14, rtol=1e-14)
        pts.append((s * dx, s * dy))
    px, py = np.array(pts).T
    design = np.column_stack([px**2, px * py, py**2, px, py])
    coef, *_ = np.linalg.lstsq(design, np.ones_like(px), rcond=None)
    a, b, c = coef[:3]
    eig = np.linalg.eigvalsh([[a, b / 2], [b / 2, c]])
    return float(np.sqrt(eig[0] / eig[1]))
