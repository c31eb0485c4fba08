# A numerical propagator as an independent check of the closed form.
import numpy as np

from pneuma import ModernInitialData, psi
from pneuma.oracle import Grid1D, crank_nicolson_propagate, l2_norm, schrodinger_residual

grid = Grid1D(-12.0, 12.0, 2048)
init = ModernInitialData.from_polar(0.4, -0.3, 0.35, 1.0)

start = psi(grid.x, init, 0.0)
for stencil in (2, 4):
    end = crank_nicolson_propagate(start, grid, 1e-3, np.pi, stencil=stencil)
    err = l2_norm(end - psi(grid.x, init, np.pi), grid)
    print(f"stencil order {stencil}: L2 error at t=pi = {err:.2e}")

# finite-difference residual of 2i psi_t + psi_xx - x^2 psi, second order in h
for h in (4e-3, 2e-3, 1e-3):
    rep = schrodinger_residual(init, np.linspace(-1, 1, 5), 1.3, h)
    print(f"h={h:.0e}  residual={rep.max_abs_residual:.2e}  order={rep.observed_order:.2f}")
