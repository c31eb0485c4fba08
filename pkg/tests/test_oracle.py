import math

import numpy as np
import pytest

from pneuma import dynamics as dyn
from pneuma import wavefunctions as wf
from pneuma.oracle import (
    BoundaryLeakError,
    Grid1D,
    QuadratureError,
    crank_nicolson_propagate,
    l2_norm,
    numeric_moments,
    quadrature,
    schrodinger_residual,
    wigner_transform_numeric,
)
from pneuma.states import DiskPoint, LegacyParams, ModernInitialData, StateSnapshot

GRID = Grid1D(-12.0, 12.0, 2048)
GROUND = ModernInitialData(0, 0, DiskPoint(0))


def test_grid_validation():
    assert GRID.spacing == pytest.approx(24 / 2047)
    with pytest.raises(ValueError):
        Grid1D(1.0, 1.0, 32)
    with pytest.raises(ValueError):
        Grid1D(0.0, 1.0, 8)


def test_quadrature_basics():
    assert quadrature(lambda x: 1.0, 0, 1) == pytest.approx(1.0, abs=1e-15)
    assert quadrature(lambda x: math.exp(-x * x), -10, 10) == pytest.approx(math.sqrt(math.pi), abs=1e-12)


def test_quadrature_normalization_of_squeezed_state():
    init = ModernInitialData.from_polar(0.8, -1.1, 0.55, 2.0)
    s = dyn.snapshot_at(init, 2.2)
    width = 1 / math.sqrt(s.u)
    mass = quadrature(lambda x: abs(wf.psi(x, init, 2.2)) ** 2, s.q - 12 * width, s.q + 12 * width,
                      tol=1e-13)
    assert mass == pytest.approx(1.0, abs=1e-12)


def test_quadrature_nonconvergence_reports_estimate():
    with pytest.raises(QuadratureError) as info:
        quadrature(lambda x: math.sin(1 / x), 1e-4, 1.0, tol=1e-14, limit=5)
    assert math.isfinite(info.value.estimate)
    with pytest.raises(ValueError):
        quadrature(lambda x: x, 0, 1, tol=0)


def test_residual_ground_state():
    rep = schrodinger_residual(GROUND, 0.3, 0.9, 1e-3)
    assert rep.max_abs_residual < 1e-5
    assert rep.step_h == 1e-3
    assert rep.observed_order == pytest.approx(2.0, abs=0.5)


def test_residual_accepts_legacy_and_callables():
    legacy = LegacyParams.initial(0.4, 1.3, -0.6, 0.5)
    rep = schrodinger_residual(legacy, np.linspace(-1, 1, 5), 2.0)
    assert rep.max_abs_residual < 1e-4
    with pytest.raises(ValueError):
        schrodinger_residual(GROUND, 0.0, 0.0, h=0.1)
    with pytest.raises(TypeError):
        schrodinger_residual(3.0, 0.0, 0.0)


def test_residual_is_smooth_across_tan_singularity():
    init = ModernInitialData.from_polar(0.5, 0.3, 0.4, 1.0)
    rep = schrodinger_residual(init, np.linspace(-1, 1, 9), math.pi / 2, 1e-3)
    assert rep.max_abs_residual < 1e-4
    assert rep.observed_order == pytest.approx(2.0, abs=0.5)


def test_residual_detects_corrupted_width():
    init = ModernInitialData.from_polar(0.4, -0.3, 0.35, 0.6)
    x, t = np.linspace(-1, 1, 7), 1.1

    def corrupted(xx, tt):
        s = dyn.snapshot_at(init, tt)
        bad = StateSnapshot.from_values(s.q, s.p, 1.01 * s.u, s.v, s.phi)
        return wf.psi_snapshot(xx, bad)

    good = schrodinger_residual(init, x, t).max_abs_residual
    bad = schrodinger_residual(corrupted, x, t).max_abs_residual
    assert bad >= 10 * good


def test_cn_ground_state():
    start = wf.psi(GRID.x, GROUND, 0.0)
    end = crank_nicolson_propagate(start, GRID, 1e-3, math.pi)
    assert l2_norm(end - wf.psi(GRID.x, GROUND, math.pi), GRID) < 1e-6
    assert abs(l2_norm(end, GRID) - l2_norm(start, GRID)) < 1e-8


def test_cn_three_point_stencil_is_second_order_in_space():
    init = ModernInitialData.from_polar(0.3, -0.2, 0.3, 1.0)
    errors = []
    for n in (257, 513, 1025):
        grid = Grid1D(-12.0, 12.0, n)
        end = crank_nicolson_propagate(wf.psi(grid.x, init, 0.0), grid, 2e-4, 0.5, stencil=2)
        errors.append(l2_norm(end - wf.psi(grid.x, init, 0.5), grid))
    orders = np.log2(np.array(errors[:-1]) / errors[1:])
    assert np.all(np.abs(orders - 2.0) < 0.3)


def test_cn_second_order_in_time():
    init = ModernInitialData.from_polar(0.3, -0.2, 0.3, 1.0)
    exact = wf.psi(GRID.x, init, 1.0)
    errors = [l2_norm(crank_nicolson_propagate(wf.psi(GRID.x, init, 0.0), GRID, dt, 1.0) - exact, GRID)
              for dt in (0.04, 0.02, 0.01)]
    orders = np.log2(np.array(errors[:-1]) / errors[1:])
    assert np.all(np.abs(orders - 2.0) < 0.2)


def test_cn_norm_preserved_over_period():
    init = ModernInitialData.from_polar(1.0, 0.5, 0.5, 2.0)
    start = wf.psi(GRID.x, init, 0.0)
    end = crank_nicolson_propagate(start, GRID, 1e-2, 2 * math.pi)
    assert abs(l2_norm(end, GRID) - l2_norm(start, GRID)) < 1e-8


def test_cn_zero_stays_zero():
    out = crank_nicolson_propagate(np.zeros(GRID.n), GRID, 1e-2, 1.0)
    assert not np.any(out)


def test_cn_boundary_leak_aborts():
    init = ModernInitialData(10.0, 0.0, DiskPoint(0))
    with pytest.raises(BoundaryLeakError):
        crank_nicolson_propagate(wf.psi(GRID.x, init, 0.0), GRID, 1e-2, 1.0)


def test_cn_rejects_bad_input():
    with pytest.raises(ValueError):
        crank_nicolson_propagate(np.zeros(GRID.n), GRID, 0.0, 1.0)
    with pytest.raises(ValueError):
        crank_nicolson_propagate(np.zeros(10), GRID, 1e-2, 1.0)
    with pytest.raises(ValueError):
        crank_nicolson_propagate(np.zeros(GRID.n), GRID, 1e-2, 1.0, stencil=3)


def test_wigner_numeric_ground_peak():
    val = wigner_transform_numeric(wf.psi(GRID.x, GROUND, 0.0), GRID, 0.0, 0.0)
    assert val == pytest.approx(1 / math.pi, abs=1e-12)
    assert 1 / math.pi == pytest.approx(0.31831, abs=1e-5)


def test_wigner_numeric_random_state_grid():
    rng = np.random.default_rng(31)
    init = ModernInitialData.from_polar(*rng.uniform(-1, 1, 2), rng.uniform(0.2, 0.6), rng.uniform(0, 6))
    t = rng.uniform(0, 6)
    s = dyn.snapshot_at(init, t)
    sampled = wf.psi(GRID.x, init, t)
    ps = np.linspace(s.p - 3, s.p + 3, 21)
    worst, lowest = 0.0, np.inf
    for x in np.linspace(s.q - 3, s.q + 3, 21):
        numeric = wigner_transform_numeric(sampled, GRID, x, ps)
        worst = max(worst, np.max(np.abs(numeric - wf.wigner(x, ps, s))))
        lowest = min(lowest, numeric.min())
    assert worst < 1e-7
    assert lowest >= -1e-9


def test_wigner_numeric_rejects_out_of_range():
    with pytest.raises(ValueError):
        wigner_transform_numeric(np.zeros(GRID.n), GRID, 13.0, 0.0)


def test_numeric_moments_ground():
    m = numeric_moments(wf.psi(GRID.x, GROUND, 0.0), GRID)
    assert m.var_x == pytest.approx(0.5, abs=1e-8)
    assert m.var_p == pytest.approx(0.5, abs=1e-8)


def test_numeric_moments_squeezed_snapshot():
    s = StateSnapshot.from_values(2, 1, 4, -1)
    m = numeric_moments(wf.psi0(GRID.x, s), GRID)
    assert m.cov_xp == pytest.approx(1 / 8, abs=1e-7)
    assert m.var_p == pytest.approx(17 / 8, abs=1e-7)
    assert m.determinant == pytest.approx(0.25, abs=1e-7)
