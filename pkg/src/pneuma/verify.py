"""Verification suites run by ``pneuma verify``.

Each suite draws its random data from :class:`~pneuma.rng.Lcg64` and returns
a JSON-ready dict with a ``passed`` flag and the measured quantities.
"""

from __future__ import annotations

import math

import numpy as np

from . import dynamics as dyn
from . import oracle
from . import wavefunctions as wf
from .rng import Lcg64
from .states import LegacyParams, ModernInitialData, PneumaPoint, StateSnapshot
from .typos import typo_report

DEFAULT_TOLERANCES = {
    "equivalence": 1e-10,
    "residual": 1e-4,
    "residual_order": 0.5,
    "propagation_l2": 1e-5,
    "norm_drift": 1e-8,
    "normalization": 1e-10,
    "marginal": 1e-8,
    "wigner_norm": 1e-6,
    "rs_analytic": 1e-12,
    "rs_numeric": 1e-7,
    "disk_modulus": 1e-15,
    "period": 1e-12,
    "breathing": 1e-9,
    "rotation": 1e-10,
    "polar": 1e-12,
}

TWO_PI = 2 * math.pi


def random_legacy(rng: Lcg64) -> LegacyParams:
    return LegacyParams.initial(rng.uniform(-2, 2), rng.uniform(0.2, 3),
                                rng.uniform(-3, 3), rng.uniform(-3, 3))


def random_modern(rng: Lcg64, qp=2.0, r_max=0.7) -> ModernInitialData:
    return ModernInitialData.from_polar(rng.uniform(-qp, qp), rng.uniform(-qp, qp),
                                        rng.uniform(0, r_max), rng.uniform(0, TWO_PI))


def perturbed(snapshot: StateSnapshot, perturb_u: float) -> StateSnapshot:
    if not perturb_u:
        return snapshot
    return StateSnapshot(snapshot.phase_point,
                         PneumaPoint(snapshot.u * (1 + perturb_u), snapshot.v), snapshot.phi)


def suite_equivalence(rng, tol, n_states=1000, n_times=20, perturb_u=0.0):
    offsets = np.linspace(-2.5, 2.5, 11)
    worst = 0.0
    for _ in range(n_states):
        legacy = random_legacy(rng)
        init = ModernInitialData.from_legacy(legacy)
        ts = np.array([rng.uniform(0, TWO_PI) for _ in range(n_times)])[:, None]
        snap = dyn.snapshot_at(init, ts)
        xs = snap.q + offsets[None, :] / np.sqrt(snap.u)
        modern = wf.psi_snapshot(xs, perturbed(snap, perturb_u))
        old = wf.psi_legacy(xs, legacy, ts)
        worst = max(worst, float(np.max(np.abs(modern - old))))
    return {"max_abs_difference": worst, "tolerance": tol["equivalence"],
            "passed": worst < tol["equivalence"]}


def suite_residual(rng, tol, n=100, h=1e-3):
    worst, orders = 0.0, []
    for _ in range(n):
        init = random_modern(rng, qp=1.5, r_max=0.5)
        t = rng.uniform(0, TWO_PI)
        s = dyn.snapshot_at(init, t)
        x = s.q + rng.uniform(-1.5, 1.5) / math.sqrt(s.u)
        rep = oracle.schrodinger_residual(init, x, t, h)
        worst = max(worst, rep.max_abs_residual)
        orders.append(rep.observed_order)
    orders = np.array(orders)
    order_ok = bool(np.all(np.abs(orders - 2.0) <= tol["residual_order"]))
    return {"max_abs_residual": worst, "min_order": float(orders.min()),
            "max_order": float(orders.max()), "tolerance": tol["residual"],
            "passed": worst < tol["residual"] and order_ok}


def random_propagation_state(rng) -> ModernInitialData:
    return ModernInitialData.from_polar(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5),
                                        rng.uniform(0.1, 0.4), rng.uniform(0, TWO_PI))


def suite_propagation(rng, tol, t_final=math.pi, dt=1e-3):
    grid = oracle.Grid1D(-12.0, 12.0, 2048)
    init = random_propagation_state(rng)
    start = wf.psi(grid.x, init, 0.0)
    end = oracle.crank_nicolson_propagate(start, grid, dt, t_final)
    exact = wf.psi(grid.x, init, t_final)
    err = oracle.l2_norm(end - exact, grid)
    drift = abs(oracle.l2_norm(end, grid) - oracle.l2_norm(start, grid))
    return {"l2_error": err, "norm_drift": drift,
            "state": [init.q0, init.p0, float(init.zeta0.r), float(init.zeta0.theta)],
            "passed": err < tol["propagation_l2"] and drift < tol["norm_drift"]}


def _window(center, std, k=14.0):
    return center - k * std, center + k * std


def normalization_error(init: ModernInitialData, t: float) -> float:
    s = dyn.snapshot_at(init, t)
    a, b = _window(s.q, math.sqrt(0.5 / s.u))
    mass = oracle.quadrature(lambda x: abs(wf.psi(x, init, t)) ** 2, a, b, tol=1e-13)
    return abs(mass - 1.0)


def marginal_errors(s: StateSnapshot, xs, ps):
    """Max deviation of the two Wigner marginals from the closed-form densities."""
    u, v = s.u, s.v
    mod2 = u**2 + v**2
    worst_x = 0.0
    for x in xs:
        centre = s.p - v * (x - s.q)
        a, b = _window(centre, math.sqrt(u / 2))
        val = oracle.quadrature(lambda p: wf.wigner(x, p, s), a, b, tol=1e-13)
        worst_x = max(worst_x, abs(val - wf.position_density(x, s)))
    worst_p = 0.0
    for p in ps:
        centre = s.q - v * (p - s.p) / mod2
        a, b = _window(centre, math.sqrt(u / (2 * mod2)))
        val = oracle.quadrature(lambda x: wf.wigner(x, p, s), a, b, tol=1e-13)
        worst_p = max(worst_p, abs(val - wf.momentum_density(p, s)))
    return worst_x, worst_p


def wigner_mass(s: StateSnapshot) -> float:
    m = wf.analytic_moments(s)
    ax, bx = _window(s.q, math.sqrt(m.var_x))

    def inner(x):
        centre = s.p - s.v * (x - s.q)
        a, b = _window(centre, math.sqrt(s.u / 2))
        return oracle.quadrature(lambda p: wf.wigner(x, p, s), a, b, tol=1e-11)

    return oracle.quadrature(inner, ax, bx, tol=1e-10)


def suite_marginals(rng, tol, n_states=5):
    norm_err = marg = mass_err = 0.0
    for _ in range(n_states):
        init = random_modern(rng)
        t = rng.uniform(0, TWO_PI)
        norm_err = max(norm_err, normalization_error(init, t))
        s = dyn.snapshot_at(init, t)
        m = wf.analytic_moments(s)
        xs = s.q + np.linspace(-2, 2, 5) * math.sqrt(m.var_x)
        ps = s.p + np.linspace(-2, 2, 5) * math.sqrt(m.var_p)
        mx, mp = marginal_errors(s, xs, ps)
        marg = max(marg, mx, mp)
        mass_err = max(mass_err, abs(wigner_mass(s) - 1.0))
    return {"normalization_error": norm_err, "marginal_error": marg,
            "wigner_mass_error": mass_err,
            "passed": (norm_err < tol["normalization"] and marg < tol["marginal"]
                       and mass_err < tol["wigner_norm"])}


def suite_uncertainty(rng, tol, n_states=5, n_times=4):
    grid = oracle.Grid1D(-12.0, 12.0, 2048)
    worst_a = worst_n = 0.0
    for _ in range(n_states):
        init = random_modern(rng, qp=1.5, r_max=0.6)
        for _ in range(n_times):
            t = rng.uniform(0, TWO_PI)
            s = dyn.snapshot_at(init, t)
            worst_a = max(worst_a, abs(wf.analytic_moments(s).determinant - 0.25))
            num = oracle.numeric_moments(wf.psi(grid.x, init, t), grid)
            worst_n = max(worst_n, abs(num.determinant - 0.25))
    return {"analytic_deviation": worst_a, "numeric_deviation": worst_n,
            "passed": worst_a < tol["rs_analytic"] and worst_n < tol["rs_numeric"]}


def breathing_ratio(init: ModernInitialData) -> float:
    """``max var_x / min var_x`` from the times where ``zeta(t)`` is real."""
    theta0 = float(init.zeta0.theta)
    t_extreme = np.array([theta0 / 2, theta0 / 2 + math.pi / 2])
    var_x = wf.analytic_moments(dyn.snapshot_at(init, t_extreme)).var_x
    return float(var_x.max() / var_x.min())


def suite_geometry(rng, tol, n_states=20, n_times=50):
    modulus = period = breath = 0.0
    positive = True
    for _ in range(n_states):
        init = random_modern(rng, r_max=0.9)
        ts = np.array([rng.uniform(-TWO_PI, TWO_PI) for _ in range(n_times)])
        zeta = dyn.disk_at(init, ts)
        r0 = float(init.zeta0.r)
        modulus = max(modulus, float(np.max(np.abs(np.abs(zeta.zeta) - r0))))
        a = dyn.snapshot_at(init, ts)
        b = dyn.snapshot_at(init, ts + math.pi)
        c = dyn.snapshot_at(init, ts + TWO_PI)
        positive &= bool(np.all(a.u > 0))
        fa = dyn.breathing_widths(init.zeta0, ts)
        fb = dyn.breathing_widths(init.zeta0, ts + math.pi)
        diffs = [a.u - b.u, a.v - b.v, fa.f_minus - fb.f_minus, fa.f_plus - fb.f_plus,
                 wf.analytic_moments(a).var_x - wf.analytic_moments(b).var_x,
                 a.q - c.q, a.p - c.p]
        period = max(period, max(float(np.max(np.abs(d))) for d in diffs))
        expected = ((1 + r0) / (1 - r0)) ** 2
        breath = max(breath, abs(breathing_ratio(init) - expected) / expected)
    return {"disk_modulus_error": modulus, "u_positive": positive, "period_error": period,
            "breathing_ratio_error": breath,
            "passed": (modulus <= tol["disk_modulus"] and positive and period < tol["period"]
                       and breath < tol["breathing"])}


def rotation_error(init: ModernInitialData, t: float, n: int = 41) -> float:
    s_t = dyn.snapshot_at(init, t)
    s_0 = dyn.snapshot_at(init, 0.0)
    xs = np.linspace(-4, 4, n)
    X, P = np.meshgrid(xs, xs, indexing="ij")
    c, s = math.cos(t), math.sin(t)
    back_x = X * c - P * s
    back_p = P * c + X * s
    return float(np.max(np.abs(wf.wigner(X, P, s_t) - wf.wigner(back_x, back_p, s_0))))


def suite_rotation(rng, tol, n_states=10):
    worst = 0.0
    for _ in range(n_states):
        init = random_modern(rng)
        worst = max(worst, rotation_error(init, rng.uniform(0, TWO_PI)))
    return {"max_abs_difference": worst, "passed": worst < tol["rotation"]}


def suite_typos(rng, tol):
    entries = typo_report()
    return {"entries": entries, "passed": all(e["confirmed"] for e in entries)}


SUITES = {
    "equivalence": suite_equivalence,
    "residual": suite_residual,
    "propagation": suite_propagation,
    "marginals": suite_marginals,
    "uncertainty": suite_uncertainty,
    "geometry": suite_geometry,
    "rotation": suite_rotation,
    "typos": suite_typos,
}


def run_verification(suites=None, seed: int = 0, tolerances: dict | None = None,
                     perturb_u: float = 0.0) -> dict:
    """Run the named suites (all by default); ``perturb_u`` is a fault-injection hook."""
    names = list(SUITES) if not suites else list(suites)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
    tol = dict(DEFAULT_TOLERANCES)
    for key, value in (tolerances or {}).items():
        if key not in tol:
            raise KeyError(f"unknown tolerance: {key}")
        tol[key] = float(value)

    results = {}
    for i, name in enumerate(names):
        rng = Lcg64(seed * 1000003 + i)
        if name == "equivalence":
            results[name] = SUITES[name](rng, tol, perturb_u=perturb_u)
        else:
            results[name] = SUITES[name](rng, tol)
    return {
        "meta": {"seed": seed, "suites": names, "tolerances": tol, "perturb_u": perturb_u},
        "data": results,
        "passed": all(r["passed"] for r in results.values()),
    }
