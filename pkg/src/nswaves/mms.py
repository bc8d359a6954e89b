"""Manufactured solution for solver verification.

The exact fields are trigonometric and chosen so the mass equation holds
with no forcing (v_t = u_x identically):

    v(x,t)     = 1 + av*sin(k*x)*cos(om*t)
    u(x,t)     = (av*om/k)*cos(k*x)*sin(om*t)
    theta(x,t) = th0 + ath*cos(k*x)*cos(om*t)

forcing_momentum and forcing_energy are the residuals these fields leave
in the momentum and temperature equations, derived by the chain rule
(tools/gen_mms.py re-derives them symbolically as a cross-check).
"""

from dataclasses import dataclass

import numpy as np

from .gas import GasParams

__all__ = ["ManufacturedSolution"]


@dataclass(frozen=True)
class ManufacturedSolution:
    gas: GasParams
    av: float = 0.1
    ath: float = 0.1
    th0: float = 1.0
    k: float = 0.3
    om: float = 0.25

    def __post_init__(self):
        if not (0 < self.av < 1):
            raise ValueError("av must lie in (0, 1) to keep v positive")
        if not (0 <= self.ath < self.th0):
            raise ValueError("ath must keep theta positive")

    def eval(self, x, t):
        x = np.asarray(x, dtype=float)
        v = 1.0 + self.av * np.sin(self.k * x) * np.cos(self.om * t)
        u = (self.av * self.om / self.k) * np.cos(self.k * x) \
            * np.sin(self.om * t)
        th = self.th0 + self.ath * np.cos(self.k * x) * np.cos(self.om * t)
        return v, u, th

    def _pieces(self, x, t):
        av, ath, k, om, th0 = self.av, self.ath, self.k, self.om, self.th0
        sx, cx = np.sin(k * x), np.cos(k * x)
        st, ct = np.sin(om * t), np.cos(om * t)
        v = 1.0 + av * sx * ct
        th = th0 + ath * cx * ct
        return av, ath, k, om, sx, cx, st, ct, v, th

    def forcing_momentum(self, x, t):
        g = self.gas
        x = np.asarray(x, dtype=float)
        av, ath, k, om, sx, cx, st, ct, v, th = self._pieces(x, t)
        u_t = (av * om ** 2 / k) * cx * ct
        u_x = -av * om * sx * st
        u_xx = -av * om * k * cx * st
        v_x = av * k * cx * ct
        th_x = -ath * k * sx * ct
        p_x = g.R * (th_x * v - th * v_x) / v ** 2
        visc = g.mu_tilde * (u_xx / v - u_x * v_x / v ** 2)
        return u_t + p_x - visc

    def forcing_energy(self, x, t):
        g = self.gas
        b = g.beta
        x = np.asarray(x, dtype=float)
        av, ath, k, om, sx, cx, st, ct, v, th = self._pieces(x, t)
        th_t = -ath * om * cx * st
        th_x = -ath * k * sx * ct
        th_xx = -ath * k ** 2 * cx * ct
        u_x = -av * om * sx * st
        v_x = av * k * cx * ct
        p = g.R * th / v
        heat = g.kappa_tilde * (b * th ** (b - 1.0) * th_x ** 2 / v
                                + th ** b * th_xx / v
                                - th ** b * th_x * v_x / v ** 2)
        return g.c_nu * th_t + p * u_x - heat - g.mu_tilde * u_x ** 2 / v
