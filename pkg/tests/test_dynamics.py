import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pneuma import dynamics as dyn
from pneuma.oracle import contour_axis_ratio, quadrature
from pneuma.states import (
    DiskPoint,
    DomainError,
    LegacyParams,
    ModernInitialData,
    PhasePoint,
    PneumaPoint,
    legacy_from_modern,
)
from pneuma.wavefunctions import psi0, wigner


def test_phase_point_examples():
    pp = dyn.evolve_phase_point(PhasePoint(1, 0), math.pi / 2)
    assert (pp.q, pp.p) == pytest.approx((0, -1), abs=1e-15)
    pp = dyn.evolve_phase_point(PhasePoint(0.7, -1.3), 2 * math.pi)
    assert (pp.q, pp.p) == pytest.approx((0.7, -1.3), abs=1e-14)
    # oracle: rotation matrix [[c, s], [-s, c]] applied to (1, 2)
    c = s = math.sqrt(0.5)
    rot = np.array([[c, s], [-s, c]]) @ [1, 2]
    assert rot == pytest.approx([3 / math.sqrt(2), 1 / math.sqrt(2)])
    pp = dyn.evolve_phase_point(PhasePoint(1, 2), math.pi / 4)
    assert (pp.q, pp.p) == pytest.approx(tuple(rot), abs=1e-15)


def test_disk_examples():
    assert dyn.evolve_disk(DiskPoint(0.5), math.pi / 2).zeta == pytest.approx(-0.5, abs=1e-15)
    assert dyn.evolve_disk(DiskPoint(0.5), math.pi).zeta == pytest.approx(0.5, abs=1e-15)
    # clockwise rotation: 0.3 e^{i pi/4} e^{-i pi/4} = 0.3
    z = dyn.evolve_disk(DiskPoint.from_polar(0.3, math.pi / 4), math.pi / 8).zeta
    assert z == pytest.approx(0.3, abs=1e-15)


def test_pneuma_examples():
    t = np.linspace(-3, 7, 11)
    coherent = dyn.pneuma_trajectory(PneumaPoint(1.0, 0.0), t)
    assert np.allclose(coherent.u, 1, atol=1e-15) and np.allclose(coherent.v, 0, atol=1e-15)
    # oracle: Cayley conjugation of the disk rotation, done by hand
    zeta0 = (3 - 1) / (3 + 1)
    zt = zeta0 * np.exp(-2j * math.pi / 2)
    expected = (1 + zt) / (1 - zt)
    assert expected == pytest.approx(1 / 3)
    half = dyn.pneuma_trajectory(PneumaPoint(3.0, 0.0), math.pi / 2)
    assert (half.u, half.v) == pytest.approx((1 / 3, 0), abs=1e-15)
    full = dyn.pneuma_trajectory(PneumaPoint(3.0, 0.0), math.pi)
    assert (full.u, full.v) == pytest.approx((3, 0), abs=1e-14)


def test_pneuma_matches_disk_rotation_near_singular_times():
    rng = np.random.default_rng(3)
    for _ in range(50):
        z0 = PneumaPoint(rng.uniform(0.05, 20), rng.uniform(-5, 5))
        t = np.concatenate([rng.uniform(-7, 7, 20),
                            math.pi / 2 + np.array([0, 1e-9, -1e-9, 1e-5]),
                            3 * math.pi / 2 + np.array([0, 1e-7])])
        closed = dyn.pneuma_trajectory(z0, t)
        via = dyn.pneuma_via_disk(z0, t)
        scale = np.abs(closed.z)
        assert np.max(np.abs(closed.z - via.z) / scale) < 1e-11


def test_group_laws():
    rng = np.random.default_rng(11)
    for _ in range(100):
        s, t = rng.uniform(-10, 10, 2)
        pp = PhasePoint(*rng.uniform(-3, 3, 2))
        a = dyn.evolve_phase_point(dyn.evolve_phase_point(pp, s), t)
        b = dyn.evolve_phase_point(pp, s + t)
        assert (a.q, a.p) == pytest.approx((b.q, b.p), abs=1e-12)
        d = DiskPoint.from_polar(rng.uniform(0, 0.95), rng.uniform(0, 6.3))
        assert dyn.evolve_disk(dyn.evolve_disk(d, s), t).zeta == pytest.approx(
            dyn.evolve_disk(d, s + t).zeta, abs=1e-12)
        z0 = PneumaPoint(rng.uniform(0.1, 10), rng.uniform(-3, 3))
        za = dyn.pneuma_trajectory(dyn.pneuma_trajectory(z0, s), t)
        zb = dyn.pneuma_trajectory(z0, s + t)
        assert abs(za.z - zb.z) <= 1e-11 * abs(zb.z)


def test_disk_modulus_conserved():
    rng = np.random.default_rng(5)
    d = DiskPoint.from_polar(0.83, 1.2)
    t = rng.uniform(-50, 50, 1000)
    assert np.max(np.abs(np.abs(dyn.evolve_disk(d, t).zeta) - 0.83)) <= 1e-15


def test_unwrapped_angle_is_continuous_and_steps_by_pi():
    t = np.linspace(-10, 10, 200001)
    ang = dyn.unwrapped_angle(1.7, -0.6, t)
    assert np.max(np.abs(np.diff(ang))) < 1e-3
    assert np.all(np.diff(ang) > 0)
    assert dyn.unwrapped_angle(1.7, -0.6, 1.0 + math.pi) == pytest.approx(
        dyn.unwrapped_angle(1.7, -0.6, 1.0) + math.pi, abs=1e-14)
    # derivative is u(t)
    h = 1e-5
    tt = np.array([0.2, 1.5707963, 2.9])
    deriv = (dyn.unwrapped_angle(1.7, -0.6, tt + h) - dyn.unwrapped_angle(1.7, -0.6, tt - h)) / (2 * h)
    assert deriv == pytest.approx(dyn.pneuma_trajectory(PneumaPoint(1.7, -0.6), tt).u, rel=1e-8)


def test_legacy_ground_state():
    t = np.linspace(0, 9, 37)
    lp = dyn.legacy_trajectory(LegacyParams.initial(0, 1, 0, 0), t)
    assert np.allclose(lp.alpha, 0, atol=1e-15)
    assert np.allclose(lp.beta, 1, atol=1e-15)
    assert np.allclose(lp.gamma, -t / 2, atol=1e-14)
    for arr in (lp.delta, lp.epsilon, lp.kappa):
        assert np.allclose(arr, 0, atol=1e-15)


def test_legacy_identity_at_zero():
    lp = dyn.legacy_trajectory(LegacyParams.initial(-0.7, 1.3, 2.1, -0.4), 0.0)
    assert (lp.alpha, lp.beta, lp.gamma, lp.delta, lp.epsilon, lp.kappa) == pytest.approx(
        (-0.7, 1.3, 0, 2.1, -0.4, 0), abs=1e-15)


def _commuting_diagram_error(legacy, t):
    init = ModernInitialData.from_legacy(legacy)
    direct = dyn.legacy_trajectory(legacy, t)
    gamma = dyn.legacy_gamma(legacy, t)
    via = legacy_from_modern(dyn.snapshot_at(init, t), gamma=gamma)
    parts = ["alpha", "beta", "gamma", "delta", "epsilon", "kappa"]
    return max(float(np.max(np.abs(getattr(direct, n) - getattr(via, n)))) for n in parts)


def test_legacy_commuting_diagram_example():
    assert _commuting_diagram_error(LegacyParams.initial(0.5, 2, -1, -4), 0.7) < 1e-10


def test_legacy_commuting_diagram_random():
    rng = np.random.default_rng(2024)
    t = np.linspace(0, 2 * math.pi, 20)
    for _ in range(100):
        legacy = LegacyParams.initial(rng.uniform(-2, 2), rng.uniform(0.2, 3),
                                      rng.uniform(-3, 3), rng.uniform(-3, 3))
        assert _commuting_diagram_error(legacy, t) < 1e-10


def test_legacy_negative_beta_is_normalized():
    a = dyn.legacy_trajectory(LegacyParams.initial(0.3, -1.2, 0.5, 0.8), 1.1)
    b = dyn.legacy_trajectory(LegacyParams.initial(0.3, 1.2, 0.5, -0.8), 1.1)
    assert a == b


def test_global_phase_values():
    ground = ModernInitialData(0, 0, DiskPoint(0))
    t = np.linspace(-4, 9, 27)
    assert dyn.global_phase(ground, t) == pytest.approx(-t / 2, abs=1e-14)
    init = ModernInitialData.from_polar(1.3, -0.4, 0.6, 2.0)
    v0 = init.pneuma0.v
    assert dyn.global_phase(init, 0.0) == pytest.approx(1.3 * -0.4 + 0.5 * v0 * 1.3**2, abs=1e-15)


def test_global_phase_by_phase_continuation():
    """phi(pi) from integrating the phase rate that the PDE imposes at a fixed x."""
    init = ModernInitialData(1.0, 1.0, DiskPoint(0))
    x0 = 0.3

    def rate(t):
        s = dyn.snapshot_at(init, t)
        y = x0 - s.q
        # psi0_xx / psi0 for the Gaussian, global phase excluded
        ratio = (1j * s.p - s.z * y) ** 2 - s.z
        return 0.5 * np.real(ratio - x0**2)

    total = quadrature(rate, 0.0, math.pi, tol=1e-12)
    ts = np.linspace(0, math.pi, 20001)
    args = np.unwrap(np.angle(psi0(x0, dyn.snapshot_at(init, ts))))
    phi_pi = dyn.global_phase(init, 0.0) + total - (args[-1] - args[0])
    expected = 1.0 * math.cos(math.pi) ** 2 - 0.5 * math.pi
    assert phi_pi == pytest.approx(expected, abs=1e-8)
    assert dyn.global_phase(init, math.pi) == pytest.approx(phi_pi, abs=1e-8)


def test_breathing_widths_examples():
    w = dyn.breathing_widths(DiskPoint(0), np.linspace(0, 5, 11))
    assert np.allclose(w.f_minus, 1) and np.allclose(w.f_plus, 1)
    w = dyn.breathing_widths(DiskPoint(0.5), 0.0)
    assert w.f_minus**2 == pytest.approx(3.0, rel=1e-15)
    assert dyn.cayley(DiskPoint(0.5)).u == pytest.approx(3.0)


def test_breathing_identities_and_period():
    rng = np.random.default_rng(8)
    for _ in range(50):
        init = ModernInitialData.from_polar(0, 0, rng.uniform(0, 0.95), rng.uniform(-3, 3))
        t = rng.uniform(-6, 6, 25)
        w = dyn.breathing_widths(init.zeta0, t)
        s = dyn.snapshot_at(init, t)
        assert np.max(np.abs(w.f_minus**2 - s.u) / s.u) < 1e-12
        assert np.max(np.abs(w.f_plus**2 - s.u / (s.u**2 + s.v**2)) / w.f_plus**2) < 1e-12
        shifted = dyn.breathing_widths(init.zeta0, t + math.pi)
        assert np.allclose(shifted.f_minus, w.f_minus, rtol=0, atol=1e-12)


def test_eccentricity():
    assert dyn.eccentricity(0.0) == 0.0
    assert dyn.eccentricity(0.5) == pytest.approx(8 / 9, abs=1e-15)
    assert dyn.axis_ratio(0.5) == pytest.approx(1 / 3)
    assert dyn.standard_eccentricity(0.5) == pytest.approx(math.sqrt(8 / 9))
    for bad in (-0.1, 1.0, 2.0):
        with pytest.raises(DomainError):
            dyn.eccentricity(bad)


@pytest.mark.parametrize("theta0, t", [(0.0, 0.0), (1.0, 0.4), (-2.5, 3.0)])
def test_axis_ratio_from_ellipse_fit(theta0, t):
    init = ModernInitialData.from_polar(0.4, -0.2, 0.5, theta0)
    s = dyn.snapshot_at(init, t)
    ratio = contour_axis_ratio(lambda x, p: wigner(x, p, s), (s.q, s.p))
    assert ratio == pytest.approx(1 / 3, abs=1e-9)
    assert math.sqrt(1 - ratio**2) == pytest.approx(math.sqrt(8 / 9), abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(r=st.floats(0, 0.95), theta=st.floats(-math.pi, math.pi), t=st.floats(-20, 20))
def test_pneuma_positive_and_periodic(r, theta, t):
    init = ModernInitialData.from_polar(0, 0, r, theta)
    a = dyn.snapshot_at(init, t)
    b = dyn.snapshot_at(init, t + math.pi)
    assert a.u > 0
    assert abs(a.u - b.u) <= 1e-12 * max(1.0, a.u)
    assert abs(a.v - b.v) <= 1e-12 * max(1.0, abs(a.v), a.u)
