"""Composite ansatz: two approximate rarefactions around a viscous contact.

The three waves are summed and the doubly counted middle states removed:

    V = V1 + Vcd + V3 - (v_lm + v_rm)
    U = U1 + Ucd + U3 - 2*u_mid
    Theta = T1 + Tcd + T3 - (theta_lm + theta_rm)

where the contact carries the frame velocity through u_shift = u_mid.  Far
to the left the contact and the 3-fan sit at their limits v_lm, v_rm and
the sum telescopes to the left end state; same on the right.

The ansatz fails to solve the viscous system by the source pair (F, G):

    U_t + P_x - mu_tilde*(U_x/V)_x = -F
    c_nu*Theta_t + P*U_x - kappa_tilde*(Theta**beta*Theta_x/V)_x
                         - mu_tilde*U_x**2/V = -G

with the closed forms implemented in sources(); both decay in time once
the fans spread.
"""

from dataclasses import dataclass

import numpy as np

from .contact import (ContactProfile, contact_derivs, solve_contact_profile)
from .gas import GasParams, ThermoState
from .rarefaction import (RarefactionLeg, build_rarefaction_leg,
                          rarefaction_derivs)
from .riemann import WaveDecomposition, solve_wave_pattern

__all__ = ["CompositeAnsatz", "build_composite"]


@dataclass(frozen=True, eq=False)
class CompositeAnsatz:
    gas: GasParams
    left: ThermoState
    right: ThermoState
    decomposition: WaveDecomposition
    leg1: RarefactionLeg
    leg3: RarefactionLeg
    profile: ContactProfile

    @property
    def u_mid(self):
        return self.decomposition.u_mid

    @property
    def p_mid(self):
        return self.decomposition.p_mid

    def _parts(self, x, t):
        x = np.asarray(x, dtype=float)
        d1 = rarefaction_derivs(self.leg1, x, t, self.gas)
        d3 = rarefaction_derivs(self.leg3, x, t, self.gas)
        dc = contact_derivs(self.profile, x, t, self.gas, u_shift=self.u_mid)
        return d1, dc, d3

    def eval(self, x, t):
        """(V, U, Theta) of the composite at positions x, time t."""
        d1, dc, d3 = self._parts(x, t)
        lm, rm = self.decomposition.left_mid, self.decomposition.right_mid
        V = d1["V"] + dc["V"] + d3["V"] - (lm.v + rm.v)
        U = d1["U"] + dc["U"] + d3["U"] - 2.0 * self.u_mid
        Theta = d1["Theta"] + dc["Theta"] + d3["Theta"] - (lm.theta + rm.theta)
        return V, U, Theta

    def derivs(self, x, t):
        """Composite fields with first and second x derivatives."""
        d1, dc, d3 = self._parts(x, t)
        lm, rm = self.decomposition.left_mid, self.decomposition.right_mid
        out = {
            "V": d1["V"] + dc["V"] + d3["V"] - (lm.v + rm.v),
            "U": d1["U"] + dc["U"] + d3["U"] - 2.0 * self.u_mid,
            "Theta": d1["Theta"] + dc["Theta"] + d3["Theta"]
            - (lm.theta + rm.theta),
        }
        for k in ("V_x", "U_x", "Theta_x", "V_xx", "U_xx", "Theta_xx"):
            out[k] = d1[k] + dc[k] + d3[k]
        out["U_t"] = d1["U_t"] + dc["U_t"] + d3["U_t"]
        out["V_t"] = d1["V_t"] + dc["V_t"] + d3["V_t"]
        out["Theta_t"] = d1["Theta_t"] + dc["Theta_t"] + d3["Theta_t"]
        out["P"] = self.gas.R * out["Theta"] / out["V"]
        out["P_x"] = self.gas.R * (out["Theta_x"] * out["V"]
                                   - out["Theta"] * out["V_x"]) / out["V"] ** 2
        return out

    def sources(self, x, t):
        """Source pair (F, G) the viscous system sees from the ansatz."""
        g = self.gas
        b = self.profile.beta
        d1, dc, d3 = self._parts(x, t)
        lm, rm = self.decomposition.left_mid, self.decomposition.right_mid

        V = d1["V"] + dc["V"] + d3["V"] - (lm.v + rm.v)
        Theta = d1["Theta"] + dc["Theta"] + d3["Theta"] - (lm.theta + rm.theta)
        V_x = d1["V_x"] + dc["V_x"] + d3["V_x"]
        U_x = d1["U_x"] + dc["U_x"] + d3["U_x"]
        Theta_x = d1["Theta_x"] + dc["Theta_x"] + d3["Theta_x"]
        V_xx = d1["V_xx"] + dc["V_xx"] + d3["V_xx"]
        U_xx = d1["U_xx"] + dc["U_xx"] + d3["U_xx"]
        Theta_xx = d1["Theta_xx"] + dc["Theta_xx"] + d3["Theta_xx"]

        P = g.R * Theta / V
        P_x = g.R * (Theta_x * V - Theta * V_x) / V ** 2

        F = d1["P_x"] + d3["P_x"] - P_x \
            + g.mu_tilde * (U_xx / V - U_x * V_x / V ** 2) \
            - dc["U_t"]

        def heat_flux_div(th, th_x, th_xx, v, v_x):
            return b * th ** (b - 1.0) * th_x ** 2 / v \
                + th ** b * th_xx / v - th ** b * th_x * v_x / v ** 2

        G = (self.p_mid - P) * dc["U_x"] \
            + (d1["P"] - P) * d1["U_x"] \
            + (d3["P"] - P) * d3["U_x"] \
            + g.mu_tilde * U_x ** 2 / V \
            + g.kappa_tilde * (
                heat_flux_div(Theta, Theta_x, Theta_xx, V, V_x)
                - heat_flux_div(dc["Theta"], dc["Theta_x"], dc["Theta_xx"],
                                dc["V"], dc["V_x"]))
        return F, G


def build_composite(left: ThermoState, right: ThermoState, g: GasParams, *,
                    L_xi=20.0, n_nodes=4001, tol=1e-10,
                    riemann_tol=1e-12):
    """Decompose the end states and assemble the three-wave ansatz."""
    decomp = solve_wave_pattern(left, right, g, tol=riemann_tol)
    leg1 = build_rarefaction_leg(left, decomp.left_mid, 1, g)
    leg3 = build_rarefaction_leg(right, decomp.right_mid, 3, g)
    profile = solve_contact_profile(
        decomp.left_mid.theta, decomp.right_mid.theta, decomp.p_mid, g,
        L_xi=L_xi, n_nodes=n_nodes, tol=tol)
    return CompositeAnsatz(gas=g, left=left, right=right,
                           decomposition=decomp, leg1=leg1, leg3=leg3,
                           profile=profile)
