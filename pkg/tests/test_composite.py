import math

import numpy as np
import pytest

from nswaves.composite import build_composite
from nswaves.contact import contact_residuals
from nswaves.gas import GasParams, ThermoState, pressure
from nswaves.riemann import rarefaction_curve

G = GasParams(R=1.0, gamma=5.0 / 3.0, A=1.0, beta=0.7)


def _generic_pair(g, dv1=0.08, theta_jump=1.04, dv3=0.06):
    left = ThermoState(1.0, 0.0, 1.0)
    lm = rarefaction_curve(left, left.v + dv1, 1, g)
    p_m = pressure(lm, g)
    th_rm = lm.theta * theta_jump
    v_rm = g.R * th_rm / p_m
    rm_anchor = ThermoState(v_rm, lm.u, th_rm)
    # invert the 3-curve: pick the right end below rm in volume
    v_right = v_rm - dv3
    th_right = th_rm * (v_rm / v_right) ** (g.gamma - 1.0)
    probe = rarefaction_curve(ThermoState(v_right, 0.0, th_right), v_rm, 3, g)
    u_right = lm.u - (probe.u - 0.0)
    right = ThermoState(v_right, u_right, th_right)
    return left, right


def test_far_field_telescopes_to_end_states():
    left, right = _generic_pair(G)
    comp = build_composite(left, right, G)
    t = 10.0
    xl = comp.leg1.w_left * t - 60.0
    xr = comp.leg3.w_right * t + 60.0
    V, U, Th = comp.eval(np.array([xl, xr]), t)
    assert V[0] == pytest.approx(left.v, abs=1e-10)
    assert U[0] == pytest.approx(left.u, abs=1e-10)
    assert Th[0] == pytest.approx(left.theta, abs=1e-10)
    assert V[1] == pytest.approx(right.v, abs=1e-10)
    assert U[1] == pytest.approx(right.u, abs=1e-10)
    assert Th[1] == pytest.approx(right.theta, abs=1e-10)
    F, Gsrc = comp.sources(np.array([xl, xr]), t)
    assert np.abs(F).max() < 1e-10
    assert np.abs(Gsrc).max() < 1e-10


def test_quiescent_composite_is_constant_with_zero_sources():
    st = ThermoState(1.2, 0.1, 0.9)
    comp = build_composite(st, st, G)
    x = np.linspace(-30, 30, 101)
    V, U, Th = comp.eval(x, 5.0)
    assert np.allclose(V, st.v, rtol=1e-14)
    assert np.allclose(U, st.u, atol=1e-14)
    assert np.allclose(Th, st.theta, rtol=1e-14)
    F, Gsrc = comp.sources(x, 5.0)
    assert np.abs(F).max() < 1e-13
    assert np.abs(Gsrc).max() < 1e-13


def test_contact_only_sources_reduce_to_contact_residuals():
    left = ThermoState(1.0, 0.3, 1.0)
    right = ThermoState(1.08, 0.3, 1.08)  # same u and p, temperature jump
    comp = build_composite(left, right, G)
    assert comp.leg1.degenerate and comp.leg3.degenerate
    t = 3.0
    x = np.linspace(-12, 12, 241) * math.sqrt(1 + t)
    F, Gsrc = comp.sources(x, t)
    res = contact_residuals(comp.profile, x, t, G)
    assert np.abs(F + res["momentum"]).max() < 1e-12
    assert np.abs(Gsrc + res["energy"]).max() < 1e-12
    assert np.abs(F).max() > 1e-6  # nontrivial comparison


def _fd4(f, x0, h):
    return (-f(x0 + 2 * h) + 8 * f(x0 + h) - 8 * f(x0 - h) + f(x0 - 2 * h)) \
        / (12.0 * h)


def test_sources_match_pde_residuals_by_differencing():
    # -F and -G must equal the momentum and energy residuals of the
    # evaluated composite, computed here only from eval() values
    g = G
    left, right = _generic_pair(g)
    comp = build_composite(left, right, g)
    t0 = 4.0
    probes = np.concatenate([
        comp.leg1.w_left * t0 + np.linspace(-2.0, 3.0, 5),
        np.linspace(-2.0, 2.0, 5) * math.sqrt(1 + t0),
        comp.leg3.w_right * t0 + np.linspace(-3.0, 2.0, 5),
    ])
    F, Gsrc = comp.sources(probes, t0)
    h = 2e-3
    b = g.beta

    def U_of_x(x):
        return comp.eval(x, t0)[1]

    def P_of_x(x):
        V, _, Th = comp.eval(x, t0)
        return g.R * Th / V

    def visc_flux(x):
        return _fd4(U_of_x, x, h) / comp.eval(x, t0)[0]

    def heat_flux(x):
        V, _, Th = comp.eval(x, t0)
        Th_x = _fd4(lambda xx: comp.eval(xx, t0)[2], x, h)
        return Th ** b * Th_x / V

    for i, x0 in enumerate(probes):
        xa = np.array([x0])
        U_t = _fd4(lambda tt: comp.eval(xa, tt)[1], t0, h)[0]
        Th_t = _fd4(lambda tt: comp.eval(xa, tt)[2], t0, h)[0]
        P_x = _fd4(P_of_x, xa, h)[0]
        U_x = _fd4(U_of_x, xa, h)[0]
        V0, _, Th0 = comp.eval(xa, t0)
        P0 = g.R * Th0[0] / V0[0]
        r_mom = U_t + P_x - g.mu_tilde * _fd4(visc_flux, xa, h)[0]
        r_en = g.c_nu * Th_t + P0 * U_x \
            - g.kappa_tilde * _fd4(heat_flux, xa, h)[0] \
            - g.mu_tilde * U_x ** 2 / V0[0]
        assert r_mom == pytest.approx(-F[i], abs=3e-5)
        assert r_en == pytest.approx(-Gsrc[i], abs=3e-5)
    assert np.abs(F).max() > 1e-3
    assert np.abs(Gsrc).max() > 1e-3


def test_mass_equation_exact_for_composite():
    left, right = _generic_pair(G)
    comp = build_composite(left, right, G)
    t0 = 4.0
    x = np.linspace(-12.0, 12.0, 49)
    h = 1e-4
    V_t = (comp.eval(x, t0 + h)[0] - comp.eval(x, t0 - h)[0]) / (2 * h)
    U_x = (comp.eval(x + h, t0)[1] - comp.eval(x - h, t0)[1]) / (2 * h)
    assert np.abs(V_t - U_x).max() < 1e-5


def test_derivs_match_differencing():
    left, right = _generic_pair(G)
    comp = build_composite(left, right, G)
    t0 = 4.0
    x = np.linspace(-8.0, 8.0, 17)
    d = comp.derivs(x, t0)
    h = 1e-4
    for key, idx in (("V", 0), ("U", 1), ("Theta", 2)):
        fp = comp.eval(x + h, t0)[idx]
        fm = comp.eval(x - h, t0)[idx]
        assert np.abs((fp - fm) / (2 * h) - d[key + "_x"]).max() < 1e-6
    fp = comp.eval(x, t0 + h)[1]
    fm = comp.eval(x, t0 - h)[1]
    assert np.abs((fp - fm) / (2 * h) - d["U_t"]).max() < 1e-6
    assert np.allclose(d["P"], G.R * d["Theta"] / d["V"], rtol=1e-14)


def test_middle_pressure_plateau():
    # between the fans the composite pressure sits at p_mid even though
    # V and Theta vary through the contact layer
    left, right = _generic_pair(G)
    comp = build_composite(left, right, G)
    t = 40.0
    x = np.linspace(-3.0, 3.0, 41) * math.sqrt(1 + t)
    V, U, Th = comp.eval(x, t)
    P = G.R * Th / V
    assert np.abs(P - comp.p_mid).max() < 5e-3
    assert Th.max() - Th.min() > 0.02  # the contact layer is really there
