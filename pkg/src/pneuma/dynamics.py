"""Closed-form time evolution in both parametrizations.

Time is dimensionless with oscillator period ``2*pi``. Every formula is
built from ``sin``/``cos`` only, so ``t = pi/2 + k*pi`` is a regular point.
All functions broadcast over numpy arrays of ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import (
    DiskPoint,
    DomainError,
    LegacyParams,
    ModernInitialData,
    PhasePoint,
    PneumaPoint,
    StateSnapshot,
    cayley,
    inverse_cayley,
    normalize_legacy_signs,
)


@dataclass(frozen=True)
class BreathingWidths:
    f_minus: float
    f_plus: float


def evolve_phase_point(init: PhasePoint, t) -> PhasePoint:
    c, s = np.cos(t), np.sin(t)
    return PhasePoint(init.q * c + init.p * s, init.p * c - init.q * s)


def evolve_disk(init: DiskPoint, t) -> DiskPoint:
    """Rotate the squeeze parameter at twice the oscillator frequency.

    The sense is clockwise, ``zeta(t) = exp(-2it) zeta0``; this is the
    rotation that the Schroedinger equation and the closed-form ``u(t)``,
    ``v(t)`` require.
    """
    return DiskPoint(np.exp(-2j * np.asarray(t)) * init.zeta)


def _pneuma_denominator(u0, v0, t):
    s, c = np.sin(t), np.cos(t)
    return u0**2 * s**2 + (c - v0 * s) ** 2


def pneuma_trajectory(init: PneumaPoint, t) -> PneumaPoint:
    u0, v0 = init.u, init.v
    den = _pneuma_denominator(u0, v0, t)
    u = u0 / den
    v = (2 * v0 * np.cos(2 * t) + (1 - u0**2 - v0**2) * np.sin(2 * t)) / (2 * den)
    return PneumaPoint(u, v)


def unwrapped_angle(u0, v0, t):
    """Continuous angle of the vector ``(cos t - v0 sin t, u0 sin t)``.

    This is ``arctan(u0 tan t / (1 - v0 tan t))`` on the branch through 0 at
    ``t = 0``. It increases by exactly ``pi`` every half period and its
    derivative is ``u(t)``.
    """
    t = np.asarray(t, dtype=float)
    k = np.floor(t / np.pi + 0.5)
    tr = t - k * np.pi
    s, c = np.sin(tr), np.cos(tr)
    return np.arctan2(u0 * s, c - v0 * s) + k * np.pi


def global_phase(init: ModernInitialData, t):
    q0, p0 = init.q0, init.p0
    z0 = init.pneuma0
    t = np.asarray(t, dtype=float)
    return (
        p0 * q0 * np.cos(t) ** 2
        + 0.25 * (p0**2 - q0**2) * np.sin(2 * t)
        - 0.5 * unwrapped_angle(z0.u, z0.v, t)
        + 0.5 * z0.v * q0**2
    )


def snapshot_at(init: ModernInitialData, t) -> StateSnapshot:
    """Fully evaluated state at time ``t`` (arrays of ``t`` give array fields)."""
    return StateSnapshot(
        evolve_phase_point(init.phase_point, t),
        pneuma_trajectory(init.pneuma0, t),
        global_phase(init, t),
    )


def legacy_gamma(init: LegacyParams, t):
    """``gamma(t) - gamma0`` for sign-normalized initial data."""
    return -0.5 * unwrapped_angle(init.beta**2, -2 * init.alpha, t)


def legacy_trajectory(init: LegacyParams, t) -> LegacyParams:
    """Six-parameter trajectory from initial data.

    ``init.gamma`` and ``init.kappa`` are constant offsets (normally zero).
    Initial data with ``beta0 < 0`` are sign-normalized first.
    """
    init = normalize_legacy_signs(init)
    a0, b0, d0, e0 = init.alpha, init.beta, init.delta, init.epsilon
    t = np.asarray(t, dtype=float)
    s, c = np.sin(t), np.cos(t)
    s2 = np.sin(2 * t)
    lin = 2 * a0 * s + c
    den = b0**4 * s**2 + lin**2
    if np.any(den < 1e-300):
        raise DomainError("degenerate legacy denominator")
    root = np.sqrt(den)

    alpha = (a0 * np.cos(2 * t) + s2 * (b0**4 + 4 * a0**2 - 1) / 4) / den
    beta = b0 / root
    delta = (d0 * lin + e0 * b0**3 * s) / den
    epsilon = (e0 * lin - b0 * d0 * s) / root
    kappa = (
        s**2 * (e0 * b0**2 * (a0 * e0 - b0 * d0) - a0 * d0**2) / den
        + 0.25 * s2 * (e0**2 * b0**2 - d0**2) / den
    )
    return LegacyParams(
        alpha=alpha,
        beta=beta,
        gamma=init.gamma + legacy_gamma(init, t),
        delta=delta,
        epsilon=epsilon,
        kappa=init.kappa + kappa,
    )


def corrected_widths(r0, theta0, t):
    """``(f_minus, f_plus)`` with squared values ``u(t)`` and ``u(t)/|z(t)|^2``."""
    cos_term = 2 * r0 * np.cos(theta0 - 2 * np.asarray(t))
    num = 1 - r0**2
    base = 1 + r0**2
    return np.sqrt(num / (base - cos_term)), np.sqrt(num / (base + cos_term))


def breathing_widths(zeta0: DiskPoint, t) -> BreathingWidths:
    f_minus, f_plus = corrected_widths(zeta0.r, zeta0.theta, t)
    return BreathingWidths(f_minus, f_plus)


def _check_radius(r0):
    if not np.all((np.asarray(r0) >= 0) & (np.asarray(r0) < 1)):
        raise DomainError(f"r0 must lie in [0, 1), got {r0}")


def eccentricity(r0):
    """Shape number ``4 r / (1 + r)^2`` attached to the squeeze modulus.

    It equals the square of :func:`standard_eccentricity`.
    """
    _check_radius(r0)
    return 4 * r0 / (1 + r0) ** 2


def axis_ratio(r0):
    """Minor/major axis ratio of the Wigner level-set ellipses."""
    _check_radius(r0)
    return (1 - r0) / (1 + r0)


def standard_eccentricity(r0):
    return np.sqrt(1 - axis_ratio(r0) ** 2)


def eccentricity_diagnostics(r0) -> dict:
    return {
        "r0": float(r0),
        "eccentricity_printed": float(eccentricity(r0)),
        "axis_ratio": float(axis_ratio(r0)),
        "eccentricity_standard": float(standard_eccentricity(r0)),
    }


def disk_at(init: ModernInitialData, t) -> DiskPoint:
    return evolve_disk(init.zeta0, t)


def pneuma_via_disk(init: PneumaPoint, t) -> PneumaPoint:
    """``u(t), v(t)`` computed by Cayley conjugation of the disk rotation."""
    return cayley(evolve_disk(inverse_cayley(init), t))
