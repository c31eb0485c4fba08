# Two descriptions of one squeezed wavepacket.
#
# Start from six-parameter initial data, convert to a phase-space point plus
# a squeeze parameter, evolve both ways and compare the wavefunctions.
import numpy as np

from pneuma import (LegacyParams, ModernInitialData, legacy_trajectory, modern_from_legacy,
                    psi, psi_legacy, snapshot_at)

legacy = LegacyParams.initial(alpha0=0.5, beta0=2.0, delta0=-1.0, epsilon0=-4.0)
snap = modern_from_legacy(legacy)
print("modern snapshot at t=0: q=%g p=%g u=%g v=%g phi=%g" % (snap.q, snap.p, snap.u, snap.v, snap.phi))

init = ModernInitialData.from_legacy(legacy)
print("squeeze parameter zeta0 =", init.zeta0.zeta)

# the centre turns on a circle, zeta turns twice as fast
for t in np.linspace(0, np.pi, 5):
    s = snapshot_at(init, t)
    print(f"t={t:5.3f}  q={s.q:+.4f} p={s.p:+.4f}  u={s.u:.4f} v={s.v:+.4f}")

# the legacy formulas give the same state vector, phase included
x = np.linspace(-4, 6, 201)
ts = np.linspace(0, 2 * np.pi, 50)
worst = max(np.max(np.abs(psi(x, init, t) - psi_legacy(x, legacy, t))) for t in ts)
print("max |psi_modern - psi_legacy| over the period:", worst)

# six parameters along the trajectory
lp = legacy_trajectory(legacy, ts)
print("beta(t)^2 equals u(t):", np.allclose(lp.beta**2, snapshot_at(init, ts).u))
