"""Wavefunctions, probability densities and Gaussian moments.

Conventions: ``2i psi_t + psi_xx - x^2 psi = 0`` and the Wigner function
``W(x, p) = (1/pi) * int conj(psi(x+y)) psi(x-y) exp(2ipy) dy``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import corrected_widths, legacy_trajectory, snapshot_at
from .states import DomainError, LegacyParams, ModernInitialData, PhasePoint, StateSnapshot

SQRT_PI = np.sqrt(np.pi)


@dataclass(frozen=True)
class GaussianMoments:
    mean_x: float
    mean_p: float
    var_x: float
    var_p: float
    cov_xp: float

    @property
    def determinant(self):
        """Robertson-Schroedinger determinant, 1/4 for every state here."""
        return self.var_x * self.var_p - self.cov_xp**2


def psi0(x, snapshot: StateSnapshot):
    """State vector without the global phase."""
    dx = np.asarray(x) - snapshot.q
    return (snapshot.u / np.pi) ** 0.25 * np.exp(1j * dx * snapshot.p - 0.5 * snapshot.z * dx**2)


def psi_snapshot(x, snapshot: StateSnapshot):
    return np.exp(1j * snapshot.phi) * psi0(x, snapshot)


def psi(x, init: ModernInitialData, t):
    return psi_snapshot(x, snapshot_at(init, t))


def psi_from_legacy_params(x, params: LegacyParams):
    """Wavepacket in the six-parameter form at one instant."""
    x = np.asarray(x)
    a, b, g, d, e, k = (params.alpha, params.beta, params.gamma,
                        params.delta, params.epsilon, params.kappa)
    phase = np.exp(1j * (a * x**2 + d * x + k + g))
    return phase * np.sqrt(b / SQRT_PI) * np.exp(-((b * x + e) ** 2) / 2)


def psi_legacy(x, init: LegacyParams, t):
    return psi_from_legacy_params(x, legacy_trajectory(init, t))


def position_density(x, snapshot: StateSnapshot):
    u = snapshot.u
    return np.sqrt(u / np.pi) * np.exp(-u * (snapshot.q - np.asarray(x)) ** 2)


def momentum_density(p, snapshot: StateSnapshot):
    u = snapshot.u
    mod_z = np.abs(snapshot.z)
    return np.sqrt(u / np.pi) * np.exp(-u * (np.asarray(p) - snapshot.p) ** 2 / mod_z**2) / mod_z


def wigner(x, p, snapshot: StateSnapshot):
    u, v = snapshot.u, snapshot.v
    dx = np.asarray(x) - snapshot.q
    dp = np.asarray(p) - snapshot.p
    return np.exp(-((dp + v * dx) ** 2 + u**2 * dx**2) / u) / np.pi


def _polar_setup(r0, theta0, t):
    if not np.all((np.asarray(r0) >= 0) & (np.asarray(r0) < 1)):
        raise DomainError(f"r0 must lie in [0, 1), got {r0}")
    return corrected_widths(r0, theta0, t)


def polar_position_density(x, r0, theta0, center: PhasePoint, t):
    f_minus, _ = _polar_setup(r0, theta0, t)
    return f_minus / SQRT_PI * np.exp(-(f_minus**2) * (np.asarray(x) - center.q) ** 2)


def polar_momentum_density(p, r0, theta0, center: PhasePoint, t):
    _, f_plus = _polar_setup(r0, theta0, t)
    return f_plus / SQRT_PI * np.exp(-(f_plus**2) * (np.asarray(p) - center.p) ** 2)


def polar_wigner(x, p, r0, theta0, center: PhasePoint, t):
    f_minus, f_plus = _polar_setup(r0, theta0, t)
    dx = np.asarray(x) - center.q
    dp = np.asarray(p) - center.p
    cross = 4 * r0 * np.sin(theta0 - 2 * np.asarray(t)) / (1 - r0**2)
    return np.exp(-(dx**2) / f_plus**2 - dp**2 / f_minus**2 - cross * dx * dp) / np.pi


def analytic_moments(snapshot: StateSnapshot) -> GaussianMoments:
    u, v = snapshot.u, snapshot.v
    return GaussianMoments(
        mean_x=snapshot.q,
        mean_p=snapshot.p,
        var_x=1 / (2 * u),
        var_p=(u**2 + v**2) / (2 * u),
        cov_xp=-v / (2 * u),
    )
