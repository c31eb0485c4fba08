"""Parameter sets for squeezed oscillator states and the maps between them.

Two descriptions of the same Gaussian wavepacket are supported:

* the modern one, a phase-space point ``(q, p)`` plus a squeeze parameter
  ``zeta`` in the open unit disk (or, equivalently, its Cayley image
  ``z = u + iv`` in the right half-plane);
* the legacy six-parameter set ``(alpha, beta, gamma, delta, epsilon, kappa)``.

Fields may hold numpy arrays instead of floats; every operation here is
elementwise, so a whole time grid can be carried in one value.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

#: Disk points closer than this to the unit circle are rejected.
DISK_MARGIN = 1e-12


class DomainError(ValueError):
    """Raised when parameters fall outside the domain of an operation."""


def _finite(*values) -> bool:
    return all(np.all(np.isfinite(v)) for v in values)


@dataclass(frozen=True)
class PhasePoint:
    q: float
    p: float

    def __post_init__(self):
        if not _finite(self.q, self.p):
            raise DomainError(f"phase point must be finite, got ({self.q}, {self.p})")


@dataclass(frozen=True)
class DiskPoint:
    """Squeeze parameter in the open unit disk."""

    zeta: complex

    def __post_init__(self):
        if not _finite(self.zeta) or np.any(np.abs(self.zeta) >= 1.0 - DISK_MARGIN):
            raise DomainError(f"|zeta| must be < 1 - {DISK_MARGIN:g}, got {self.zeta}")

    @classmethod
    def from_polar(cls, r: float, theta: float) -> DiskPoint:
        return cls(r * np.exp(1j * theta))

    @property
    def r(self):
        return np.abs(self.zeta)

    @property
    def theta(self):
        return np.angle(self.zeta)


@dataclass(frozen=True)
class PneumaPoint:
    """Cayley image ``z = u + iv`` of a disk point; ``u`` is the Gaussian precision."""

    u: float
    v: float

    def __post_init__(self):
        if not _finite(self.u, self.v) or np.any(np.asarray(self.u) <= 0):
            raise DomainError(f"u must be finite and > 0, got u={self.u}")

    @property
    def z(self):
        return self.u + 1j * self.v


@dataclass(frozen=True)
class LegacyParams:
    alpha: float
    beta: float
    gamma: float
    delta: float
    epsilon: float
    kappa: float

    def __post_init__(self):
        if not _finite(self.alpha, self.beta, self.gamma, self.delta, self.epsilon, self.kappa):
            raise DomainError("legacy parameters must be finite")

    @classmethod
    def initial(cls, alpha0, beta0, delta0, epsilon0) -> LegacyParams:
        """Initial data with both phase constants set to zero."""
        return cls(alpha0, beta0, 0.0, delta0, epsilon0, 0.0)


@dataclass(frozen=True)
class StateSnapshot:
    """Instantaneous state: centre, Gaussian shape and global phase."""

    phase_point: PhasePoint
    pneuma: PneumaPoint
    phi: float = 0.0

    @classmethod
    def from_values(cls, q, p, u, v, phi=0.0) -> StateSnapshot:
        return cls(PhasePoint(q, p), PneumaPoint(u, v), phi)

    @property
    def q(self):
        return self.phase_point.q

    @property
    def p(self):
        return self.phase_point.p

    @property
    def u(self):
        return self.pneuma.u

    @property
    def v(self):
        return self.pneuma.v

    @property
    def z(self):
        return self.pneuma.z


@dataclass(frozen=True)
class ModernInitialData:
    q0: float
    p0: float
    zeta0: DiskPoint

    def __post_init__(self):
        PhasePoint(self.q0, self.p0)
        if not isinstance(self.zeta0, DiskPoint):
            object.__setattr__(self, "zeta0", DiskPoint(self.zeta0))

    @classmethod
    def from_polar(cls, q0, p0, r0, theta0) -> ModernInitialData:
        return cls(q0, p0, DiskPoint.from_polar(r0, theta0))

    @classmethod
    def from_snapshot(cls, snapshot: StateSnapshot) -> ModernInitialData:
        """Initial data whose t=0 state matches ``snapshot`` up to a constant phase."""
        return cls(snapshot.q, snapshot.p, inverse_cayley(snapshot.pneuma))

    @classmethod
    def from_legacy(cls, params: LegacyParams) -> ModernInitialData:
        return cls.from_snapshot(modern_from_legacy(params))

    @property
    def phase_point(self) -> PhasePoint:
        return PhasePoint(self.q0, self.p0)

    @property
    def pneuma0(self) -> PneumaPoint:
        return cayley(self.zeta0)


def cayley(zeta: DiskPoint) -> PneumaPoint:
    """Map the unit disk onto the right half-plane, ``z = (1 + zeta) / (1 - zeta)``."""
    z = (1 + zeta.zeta) / (1 - zeta.zeta)
    return PneumaPoint(np.real(z), np.imag(z))


def inverse_cayley(z: PneumaPoint) -> DiskPoint:
    zz = z.z
    return DiskPoint((zz - 1) / (zz + 1))


def normalize_legacy_signs(params: LegacyParams) -> LegacyParams:
    """Flip ``(beta, epsilon)`` together so that ``beta > 0``.

    The wavepacket is invariant under the simultaneous sign change.
    """
    beta = np.asarray(params.beta)
    if np.any(beta == 0):
        raise DomainError("beta must be nonzero")
    if np.all(beta > 0):
        return params
    sign = np.sign(beta)
    return replace(params, beta=sign * params.beta, epsilon=sign * params.epsilon)


def legacy_from_modern(snapshot: StateSnapshot, gamma=0.0) -> LegacyParams:
    """Legacy parameters of a snapshot.

    Only ``kappa + gamma`` is fixed by the state. ``gamma`` is taken as given
    (zero for a bare snapshot) and ``kappa`` carries the remainder.
    """
    q, p, u, v = snapshot.q, snapshot.p, snapshot.u, snapshot.v
    root_u = np.sqrt(u)
    phase_sum = snapshot.phi - q * (p + 0.5 * q * v)
    return LegacyParams(
        alpha=-0.5 * v,
        beta=root_u,
        gamma=gamma,
        delta=p + v * q,
        epsilon=-root_u * q,
        kappa=phase_sum - gamma,
    )


def modern_from_legacy(params: LegacyParams) -> StateSnapshot:
    params = normalize_legacy_signs(params)
    a, b, d, e = params.alpha, params.beta, params.delta, params.epsilon
    q = -e / b
    p = d - 2 * a * e / b
    phi = params.kappa + params.gamma + e * (a * e - b * d) / b**2
    return StateSnapshot.from_values(q, p, b**2, -2 * a, phi)
