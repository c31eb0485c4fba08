# Breathing of the width and the rigid rotation of the Wigner function.
#
# Writes breathing.png and wigner.png when matplotlib is available.
import numpy as np

from pneuma import ModernInitialData, analytic_moments, eccentricity_diagnostics, snapshot_at, wigner

init = ModernInitialData.from_polar(q0=2.0, p0=0.0, r0=0.5, theta0=0.0)
t = np.linspace(0, 2 * np.pi, 400)
m = analytic_moments(snapshot_at(init, t))

ratio = m.var_x.max() / m.var_x.min()
print("var_x max/min:", ratio, " expected ((1+r)/(1-r))^2 =", 9.0)
print("determinant var_x var_p - cov^2 stays at", np.unique(np.round(m.var_x * m.var_p - m.cov_xp**2, 14)))
print(eccentricity_diagnostics(0.5))

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.plot(t, m.var_x, label="var x")
    ax.plot(t, m.var_p, label="var p")
    ax.set_xlabel("t")
    ax.legend()
    fig.tight_layout()
    fig.savefig("breathing.png", dpi=120)

    xs = np.linspace(-4, 4, 161)
    X, P = np.meshgrid(xs, xs, indexing="ij")
    fig, axes = plt.subplots(1, 4, figsize=(12, 3.2))
    for ax, tt in zip(axes, [0, np.pi / 4, np.pi / 2, 3 * np.pi / 4]):
        ax.contourf(X, P, wigner(X, P, snapshot_at(init, tt)), levels=20)
        ax.set_title(f"t = {tt:.2f}")
        ax.set_aspect("equal")
    fig.tight_layout()
    fig.savefig("wigner.png", dpi=120)
    print("wrote breathing.png, wigner.png")
