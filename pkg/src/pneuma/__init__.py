"""Minimum-uncertainty squeezed states of the harmonic oscillator.

Closed-form states in two parametrizations, their phase-space
distributions, and numerical oracles that check them.
"""

from .dynamics import (
    BreathingWidths,
    axis_ratio,
    breathing_widths,
    eccentricity,
    eccentricity_diagnostics,
    evolve_disk,
    evolve_phase_point,
    global_phase,
    legacy_trajectory,
    pneuma_trajectory,
    snapshot_at,
    standard_eccentricity,
)
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
    legacy_from_modern,
    modern_from_legacy,
    normalize_legacy_signs,
)
from .wavefunctions import (
    GaussianMoments,
    analytic_moments,
    momentum_density,
    polar_momentum_density,
    polar_position_density,
    polar_wigner,
    position_density,
    psi,
    psi0,
    psi_legacy,
    wigner,
)

__version__ = "0.1.0"
