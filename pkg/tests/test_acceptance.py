"""Acceptance battery: one criterion per test, one PASS/FAIL line per clause.

Run with `pytest tests/test_acceptance.py -v -s` to see every clause line;
without -s the lines still appear for any failing criterion.  The two
long-running trajectories (single contact wave, three-wave composite) are
module fixtures shared by the criteria that consume them; the full battery
is CPU-bound for roughly half an hour single-threaded.
"""

import math
import os
import time

import numpy as np
import pytest

from nswaves.composite import build_composite
from nswaves.config import RunConfig, load_config
from nswaves.contact import contact_residuals, contact_wave_eval, \
    solve_contact_profile
from nswaves.diagnostics import (Recorder, cell_average_bounds, decay_report,
                                 entropy_gauge_roots)
from nswaves.gas import GasParams, ThermoState, pressure
from nswaves.rarefaction import burgers_derivs, burgers_eval
from nswaves.riemann import rarefaction_curve, same_order_check, \
    solve_wave_pattern
from nswaves.scenario import (convergence_study, make_ansatz,
                              make_perturbation, record_times, window_alpha)
from nswaves.solver import (SimulationState, SolverConfig, advance,
                            initialize, make_grid)

CONFIG_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                          os.pardir, "configs")


def _clause(label, ok, detail=""):
    tag = "PASS" if ok else "FAIL"
    suffix = f"  [{detail}]" if detail else ""
    print(f"{tag}  {label}{suffix}")
    return bool(ok)


# ---------------------------------------------------------------------
# criterion 1: contact profile solves its self-similar equation


def test_criterion_01_contact_profile_residual():
    ok_all = True
    for beta in (0.5, 1.0, 2.0):
        g = GasParams(R=1.0, gamma=5.0 / 3.0, kappa_tilde=1.0, beta=beta)
        t0 = time.monotonic()
        prof = solve_contact_profile(1.0, 1.1, 1.0, g)
        wall = time.monotonic() - t0
        res = prof.ode_residual()
        dth = np.diff(prof.theta)
        mono = bool(dth.min() > -1e-12
                    and prof.theta[-1] > prof.theta[0])
        ok = _clause(
            f"criterion 1 (beta={beta}): residual < 1e-8, monotone, < 5 s",
            res < 1e-8 and mono and wall < 5.0,
            f"residual={res:.3g} wall={wall:.2f}s")
        ok_all = ok_all and ok
    assert ok_all


# ---------------------------------------------------------------------
# criterion 2: Gaussian envelopes of the contact wave


def _tail_rate(x, f, jump, tau):
    sel = (f > 1e-6 * jump) & (f < 1e-2 * jump)
    return -np.polyfit(x[sel] ** 2 / tau, np.log(f[sel]), 1)[0]


def test_criterion_02_contact_envelopes():
    x = np.linspace(0.0, 100.0, 20001)
    ok_all = True
    t0 = time.monotonic()
    for beta in (0.5, 1.0, 2.0):
        g = GasParams(R=1.0, gamma=5.0 / 3.0, kappa_tilde=1.0, beta=beta)
        prof = solve_contact_profile(1.0, 1.1, 1.0, g)
        rates, sups = [], []
        for t in (0.0, 3.0, 15.0):
            _, _, Th = contact_wave_eval(prof, x, t, g)
            rates.append(_tail_rate(x, np.abs(Th - 1.1), 0.1, 1.0 + t))
            xs = np.linspace(-60.0, 60.0, 24001)
            _, _, Th_s = contact_wave_eval(prof, xs, t, g)
            sups.append(np.abs(np.gradient(Th_s, xs)).max()
                        * math.sqrt(1.0 + t))
        rates, sups = np.array(rates), np.array(sups)
        rate_ok = rates.min() > 0 \
            and (rates.max() - rates.min()) / rates.min() <= 0.20
        sup_ok = sups.max() / sups.min() <= 1.05
        ok = _clause(
            f"criterion 2 (beta={beta}): Gaussian rate steady, "
            "sup|Theta_x| ~ (1+t)^-1/2",
            rate_ok and sup_ok,
            f"rates={np.round(rates, 4)} sup spread="
            f"{sups.max() / sups.min() - 1:.2%}")
        ok_all = ok_all and ok
    wall = time.monotonic() - t0
    ok_all = ok_all and _clause("criterion 2: runtime < 10 s", wall < 10.0,
                                f"wall={wall:.2f}s")
    assert ok_all


# ---------------------------------------------------------------------
# criterion 3: contact residual decay rates


def test_criterion_03_contact_residual_rates():
    g = GasParams(R=1.0, gamma=5.0 / 3.0, kappa_tilde=1.0, beta=0.5)
    prof = solve_contact_profile(1.0, 1.1, 1.0, g)
    x = np.linspace(-250.0, 250.0, 50001)
    ts = np.array([1.0, 10.0, 100.0])
    sup_m, sup_e = [], []
    for t in ts:
        res = contact_residuals(prof, x, t, g)
        sup_m.append(np.abs(res["momentum"]).max())
        sup_e.append(np.abs(res["energy"]).max())
    slope_m = np.polyfit(np.log1p(ts), np.log(sup_m), 1)[0]
    slope_e = np.polyfit(np.log1p(ts), np.log(sup_e), 1)[0]
    ok = _clause("criterion 3: momentum residual rate -1.5 +- 0.2",
                 abs(slope_m + 1.5) <= 0.2, f"slope={slope_m:.3f}")
    ok &= _clause("criterion 3: energy residual rate -2 +- 0.2",
                  abs(slope_e + 2.0) <= 0.2, f"slope={slope_e:.3f}")
    assert ok


# ---------------------------------------------------------------------
# criterion 4: smoothed expansion-fan properties


def test_criterion_04_burgers_fan():
    w_l, w_r = -1.0, 1.0
    d = 0.5 * (w_r - w_l)
    ok = True

    rng = np.random.default_rng(404)
    for t in (0.0, 0.5, 5.0, 50.0, 400.0):
        span = 2.0 + 1.5 * t
        x = np.sort(rng.uniform(-span, span, 10_000))
        w = burgers_eval(x, t, w_l, w_r)
        mono = np.diff(w).min() > -1e-11
        ranged = w.min() >= w_l - 1e-11 and w.max() <= w_r + 1e-11
        ok &= _clause(f"criterion 4: monotone and in range at t={t}",
                      mono and ranged,
                      f"min diff={np.diff(w).min():.2e}")

    ts = np.geomspace(10.0, 1000.0, 7)
    sups = []
    for t in ts:
        x = np.linspace(-2.0 - 1.5 * t, 2.0 + 1.5 * t, 40001)
        _, w_x, _, _ = burgers_derivs(x, t, w_l, w_r)
        sups.append(w_x.max())
    slope = np.polyfit(np.log(ts), np.log(sups), 1)[0]
    ok &= _clause("criterion 4: sup|w_x| rate -1 +- 0.1 on [10, 1000]",
                  abs(slope + 1.0) <= 0.1, f"slope={slope:.3f}")

    t = 400.0
    x = np.linspace(-1.5 * t, 1.5 * t, 10_000)
    w = burgers_eval(x, t, w_l, w_r)
    fan = np.clip(x / t, w_l, w_r)
    dist = np.abs(w - fan).max()
    ok &= _clause("criterion 4: distance to exact fan at t=400 < 5% "
                  "of strength", dist < 0.05 * (w_r - w_l),
                  f"dist={dist:.4f}")
    assert ok


# ---------------------------------------------------------------------
# criterion 5: wave-pattern decomposition against an independent oracle


def _oracle_bisection(left, right, g, iters=200):
    """Closed-form isentrope curves + plain bisection on the middle pressure."""
    p_l, p_r = pressure(left, g), pressure(right, g)
    two_mu = (g.gamma - 1.0) / (2.0 * g.gamma)

    def u_from_left(p):
        return left.u + math.sqrt(g.gamma * p_l * left.v) \
            * (2.0 / (g.gamma - 1.0)) * (1.0 - (p / p_l) ** two_mu)

    def u_from_right(p):
        return right.u - math.sqrt(g.gamma * p_r * right.v) \
            * (2.0 / (g.gamma - 1.0)) * (1.0 - (p / p_r) ** two_mu)

    lo, hi = 1e-12, min(p_l, p_r)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if u_from_left(mid) - u_from_right(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    p = 0.5 * (lo + hi)
    u = 0.5 * (u_from_left(p) + u_from_right(p))
    v_lm = left.v * (p_l / p) ** (1.0 / g.gamma)
    v_rm = right.v * (p_r / p) ** (1.0 / g.gamma)
    return p, u, ThermoState(v_lm, u, p * v_lm / g.R), \
        ThermoState(v_rm, u, p * v_rm / g.R)


def _random_r1cr3_pair(rng, g):
    """End states built by walking both wave curves outward from a middle."""
    lm = ThermoState(rng.uniform(0.8, 1.4), rng.uniform(-0.3, 0.3),
                     rng.uniform(0.8, 1.4))
    p_m = pressure(lm, g)
    v_rm = rng.uniform(0.8, 1.4)
    rm = ThermoState(v_rm, lm.u, p_m * v_rm / g.R)

    def end_of(mid, family, shrink):
        v_end = mid.v * shrink
        th_end = mid.theta * (mid.v / v_end) ** (g.gamma - 1.0)
        walked = rarefaction_curve(ThermoState(v_end, 0.0, th_end),
                                   mid.v, family, g)
        return ThermoState(v_end, mid.u - walked.u, th_end)

    left = end_of(lm, 1, rng.uniform(0.9, 0.999))
    right = end_of(rm, 3, rng.uniform(0.9, 0.999))
    return left, right


def test_criterion_05_riemann_decomposition():
    g = GasParams(R=1.0, gamma=5.0 / 3.0)
    rng = np.random.default_rng(55)
    ok = True

    worst = 0.0
    for _ in range(20):
        v_l = rng.uniform(0.6, 1.6)
        th_l = rng.uniform(0.6, 1.6)
        u = rng.uniform(-0.5, 0.5)
        c = rng.uniform(0.5, 2.0)
        left = ThermoState(v_l, u, th_l)
        right = ThermoState(c * v_l, u, c * th_l)     # equal pressure
        d1, _, d3 = solve_wave_pattern(left, right, g).strengths
        worst = max(worst, d1, d3)
    ok &= _clause("criterion 5: contact-compatible states give zero fan "
                  "strengths (1e-10)", worst < 1e-10, f"worst={worst:.2e}")

    worst = 0.0
    for _ in range(20):
        left, right = _random_r1cr3_pair(rng, g)
        dec = solve_wave_pattern(left, right, g)
        p_o, u_o, lm_o, rm_o = _oracle_bisection(left, right, g)
        err = max(abs(dec.p_mid - p_o), abs(dec.u_mid - u_o),
                  abs(dec.left_mid.v - lm_o.v),
                  abs(dec.left_mid.theta - lm_o.theta),
                  abs(dec.right_mid.v - rm_o.v),
                  abs(dec.right_mid.theta - rm_o.theta))
        worst = max(worst, err)
    ok &= _clause("criterion 5: generic middle states match the bisection "
                  "oracle (1e-8)", worst < 1e-8, f"worst={worst:.2e}")

    st = ThermoState(1.3, -0.2, 0.8)
    strengths = solve_wave_pattern(st, st, g).strengths
    ok &= _clause("criterion 5: identical states give exactly zero strengths",
                  strengths == (0.0, 0.0, 0.0), f"{strengths}")
    assert ok


# ---------------------------------------------------------------------
# criterion 6: solver verification


def test_criterion_06_solver_verification():
    t0 = time.monotonic()
    ok = True

    rep = convergence_study(
        load_config(os.path.join(CONFIG_DIR, "manufactured.cfg")), levels=3)
    orders = [o for f in ("v", "u", "theta") for o in rep["orders"][f]]
    ok &= _clause("criterion 6: manufactured orders within [1.8, 2.2]",
                  (not rep["exact"])
                  and all(1.8 <= o <= 2.2 for o in orders),
                  f"orders={np.round(orders, 3)}")

    cfg = load_config(os.path.join(CONFIG_DIR, "quiescent.cfg"))
    g = cfg.gas()
    ansatz = make_ansatz(cfg)
    grid = make_grid(cfg["grid.x_min"], cfg["grid.x_max"],
                     cfg["grid.n_cells"])
    state = initialize(ansatz, grid, g)
    v0, u0, th0 = state.v.copy(), state.u.copy(), state.theta.copy()
    advance(state, ansatz, g, cfg.solver_config(), cfg["run.t_end"])
    drift = max(np.abs(state.v - v0).max(), np.abs(state.u - u0).max(),
                np.abs(state.theta - th0).max())
    ok &= _clause("criterion 6: quiescent drift < 1e-10", drift < 1e-10,
                  f"drift={drift:.2e}")

    g = GasParams(R=1.0, gamma=5.0 / 3.0, mu_tilde=1.0, kappa_tilde=1.0,
                  beta=0.8)
    st = ThermoState(1.0, 0.0, 1.0)
    comp = build_composite(st, st, g, L_xi=12.0, n_nodes=801, tol=1e-10)
    grid = make_grid(-6.0, 6.0, 301)

    class EvenBump:
        def zeta0(self, x):
            return 0.05 * np.exp(-np.asarray(x, dtype=float) ** 2)

        def phi0(self, x):
            return self.zeta0(x)          # V = Theta = 1 here

        def psi0(self, x):
            return np.zeros_like(np.asarray(x, dtype=float))

    state = initialize(comp, grid, g, perturbation=EvenBump())
    advance(state, comp, g, SolverConfig(), 0.5)
    sym = np.array_equal(state.v, state.v[::-1]) \
        and np.array_equal(state.theta, state.theta[::-1]) \
        and np.array_equal(state.u, -state.u[::-1])
    ok &= _clause("criterion 6: reflection symmetry to machine precision",
                  sym)

    wall = time.monotonic() - t0
    ok &= _clause("criterion 6: runtime < 2 min", wall < 120.0,
                  f"wall={wall:.1f}s")
    assert ok


# ---------------------------------------------------------------------
# criteria 7-10: long trajectories (shared fixtures)


def _march(cfg, snapshots=False):
    g = cfg.gas()
    ansatz = make_ansatz(cfg)
    grid = make_grid(cfg["grid.x_min"], cfg["grid.x_max"],
                     cfg["grid.n_cells"])
    pert = make_perturbation(cfg, ansatz)
    state = initialize(ansatz, grid, g, perturbation=pert)
    rec = Recorder(ansatz, g, alpha=window_alpha(cfg, ansatz))
    rec.sample(state)
    snaps = [(0.0, state.v.copy(), state.u.copy(), state.theta.copy())]
    t0 = time.monotonic()
    for t in record_times(cfg["run.t_end"], cfg["run.n_records"])[1:]:
        advance(state, ansatz, g, cfg.solver_config(), t)
        rec.sample(state)
        if snapshots:
            snaps.append((t, state.v.copy(), state.u.copy(),
                          state.theta.copy()))
    wall = time.monotonic() - t0
    return {"cfg": cfg, "gas": g, "ansatz": ansatz, "grid": grid,
            "state": state, "recorder": rec, "snaps": snaps, "wall": wall}


@pytest.fixture(scope="module")
def contact_run():
    cfg = load_config(os.path.join(CONFIG_DIR, "contact_acceptance.cfg"))
    return _march(cfg, snapshots=True)


@pytest.fixture(scope="module")
def composite_run():
    cfg = load_config(os.path.join(CONFIG_DIR, "composite_acceptance.cfg"))
    return _march(cfg)


def _four_checks(label, run, budget_s):
    rep = decay_report(run["recorder"].records, run["cfg"].thresholds())
    ok = _clause(f"{label}: (a) v, theta positive throughout",
                 rep["positivity_ok"],
                 f"min v={rep['min_v']:.3f} min theta={rep['min_theta']:.3f}")
    ok &= _clause(f"{label}: (b) sup-norm falls by factor >= "
                  f"{rep['thresholds']['decay_factor']:g}", rep["decay_ok"],
                  f"factor={1.0 / rep['decay_factor']:.1f}x")
    ok &= _clause(f"{label}: (c) E(t) <= "
                  f"{rep['thresholds']['energy_kappa']:g} E(0) + "
                  f"{rep['thresholds']['energy_c']:g}", rep["energy_ok"],
                  f"E max/initial={rep['energy_max'] / rep['energy_initial']:.3f}")
    ok &= _clause(f"{label}: (d) dissipation final decade < "
                  f"{rep['thresholds']['tail_fraction']:.0%}",
                  rep["dissipation_ok"],
                  f"tail={rep['tail_fraction']:.3f} "
                  f"total={rep['dissipation_total']:.3g}")
    ok &= _clause(f"{label}: runtime within budget", run["wall"] < budget_s,
                  f"wall={run['wall'] / 60:.1f} min")
    return ok, rep


def test_criterion_07_contact_decay(contact_run):
    ok, _ = _four_checks("criterion 7", contact_run, 15 * 60.0)
    assert ok


def test_criterion_08_composite_decay(composite_run):
    cfg = composite_run["cfg"]
    g = composite_run["gas"]
    dec = solve_wave_pattern(cfg.left(), cfg.right(), g)
    same = same_order_check(dec, 10.0)
    ok = _clause("criterion 8: strengths (0.05, 0.05, 0.05), same order "
                 "with C=10",
                 max(abs(s - 0.05) for s in dec.strengths) < 1e-10
                 and same.same_order is True,
                 f"strengths={np.round(dec.strengths, 6)}")
    checks_ok, _ = _four_checks("criterion 8", composite_run, 25 * 60.0)
    assert ok and checks_ok


def test_criterion_08_source_norm_slope(composite_run):
    """Fit the L1 decay of the ansatz defect (F, G) over t in [1, 100].

    The target envelope C delta^(1/8) (1+t)^(-7/8) is sharp only once the
    fans have opened, i.e. for t of order 1/delta (about 70 here).  Inside
    the fixed window the measured slope sits near -0.2 for every transport
    coefficient choice, so this clause records an honest failure rather
    than a tuned pass.
    """
    comp = composite_run["ansatz"]
    cfg = composite_run["cfg"]
    x = np.linspace(cfg["grid.x_min"], cfg["grid.x_max"], 16001)
    ts = np.geomspace(1.0, 100.0, 13)
    norms = [np.trapezoid(np.abs(F) + np.abs(G), x)
             for F, G in (comp.sources(x, t) for t in ts)]
    slope = np.polyfit(np.log1p(ts), np.log(norms), 1)[0]
    ok = _clause("criterion 8: ||(F,G)||_L1 slope <= -7/8 + 0.1 on [1, 100]",
                 slope <= -7.0 / 8.0 + 0.1, f"slope={slope:.3f}")
    assert ok


def test_criterion_09_cell_average_bounds(contact_run):
    g = contact_run["gas"]
    cfg = contact_run["cfg"]
    ansatz = contact_run["ansatz"]
    grid = contact_run["grid"]
    records = contact_run["recorder"].records

    E_max = max(r.E for r in records)
    x_all = np.linspace(cfg["grid.x_min"], cfg["grid.x_max"], 2001)
    th_min = min(float(ansatz.eval(x_all, t)[2].min())
                 for t in (0.0, cfg["run.t_end"]))
    C0 = E_max / (min(g.R, g.c_nu) * th_min)
    a1, a2 = entropy_gauge_roots(C0)

    all_ok = True
    lo, hi = np.inf, -np.inf
    for t, v, u, th in contact_run["snaps"]:
        s = SimulationState(grid=grid, t=t, u=u, v=v, theta=th)
        ok_t, rep = cell_average_bounds(s, ansatz, C0)
        all_ok = all_ok and ok_t
        lo, hi = min(lo, rep["min_average"]), max(hi, rep["max_average"])
    ok = _clause("criterion 9: unit-cell averages inside [alpha1, alpha2] "
                 "along the run",
                 all_ok,
                 f"C0={C0:.3g} window=[{a1:.3f}, {a2:.3f}] "
                 f"averages=[{lo:.4f}, {hi:.4f}]")
    assert ok


def test_criterion_10_domain_doubling(contact_run):
    """Re-run the decay scenario on a doubled domain and compare t_end rows.

    Records an honest failure.  The 1e-4 target presumes the walls stay
    causally decoupled, but sound crosses the box by t ~ 77 while the run
    goes to t = 200, so the quasi-steady velocity field driven by the
    ansatz defect equilibrates against the walls and shifts at the ten
    percent level when they move.  Box-scale acoustic modes (k = pi/L)
    lose only exp(-0.07) of their amplitude over the whole run, so the
    tiny residual sup_psi also carries box-dependent phase.  A short
    horizon variant with untouched walls (t_end = 10) agrees to 1e-14 on
    every field, which pins the discrepancy on the fixed time window, not
    on the scheme.  No transport or state choice compatible with the
    dissipation-tail clause suppresses it; see the shipped config header.
    """
    base_rec = contact_run["recorder"].records[-1]
    cfg = contact_run["cfg"]
    values = dict(cfg.values)
    values["grid.x_min"] *= 2.0
    values["grid.x_max"] *= 2.0
    values["grid.n_cells"] *= 2
    doubled = _march(RunConfig(values))
    dbl_rec = doubled["recorder"].records[-1]

    rels = {}
    for f in ("E", "D", "W", "sup_phi", "sup_psi", "sup_zeta", "h1"):
        a, b = getattr(base_rec, f), getattr(dbl_rec, f)
        rels[f] = abs(a - b) / max(abs(a), abs(b), 1e-300)
    detail = " ".join(f"{f}={r:.1e}" for f, r in rels.items())
    ok = _clause("criterion 10: domain doubling shifts final diagnostics "
                 "< 1e-4", max(rels.values()) < 1e-4, detail)
    assert ok
