"""Approximate rarefaction waves built on the Burgers equation.

The characteristic speed w solves w_t + w w_x = 0 with smoothed tanh data

    w0(y) = (w_left + w_right)/2 + (w_right - w_left)/2 * tanh(y),

evaluated implicitly through w = w0(x - w t).  The gas state along the
fan lives on the isentrope of the anchoring end state; writing
K**2 = A*gamma*exp((gamma-1)*s/R), the state as a function of w is

    V(w)     = (K**2 / w**2)**(1/(gamma+1))
    U(w)     = u_a + sign(w)*(2/(gamma-1))*K**(2/(gamma+1))
                    * (|w|**q - |w_a|**q),   q = (gamma-1)/(gamma+1)
    Theta(w) = theta_a * (|w|/|w_a|)**(2*(gamma-1)/(gamma+1)).

These choices make (V, U, Theta) an exact smooth solution of the inviscid
equations: V_t = U_x, U_t + P_x = 0 and c_nu*Theta_t + P*U_x = 0 all hold
pointwise, so the only defect of a rarefaction leg comes from the omitted
diffusive fluxes.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidCurveDirection, NoConvergence
from .gas import GasParams, ThermoState, entropy, lambda_pm

__all__ = ["RarefactionLeg", "build_rarefaction_leg", "burgers_eval",
           "burgers_derivs", "rarefaction_eval", "rarefaction_derivs"]


def _sech2(y):
    # 4*exp(-2|y|) / (1 + exp(-2|y|))**2 without overflow
    e = np.exp(-2.0 * np.abs(y))
    return 4.0 * e / (1.0 + e) ** 2


def burgers_eval(x, t, w_left, w_right, *, tol=1e-12, max_iter=100):
    """Solve w = w0(x - w*t) for every point of x (vectorized Newton)."""
    if t < 0.0:
        raise ValueError("burgers_eval requires t >= 0")
    if w_right < w_left:
        raise ValueError("expansion data requires w_left <= w_right")
    x = np.asarray(x, dtype=float)
    m = 0.5 * (w_left + w_right)
    d = 0.5 * (w_right - w_left)
    if d == 0.0:
        return np.full_like(x, m)
    # safeguarded Newton: F(w) = w - w0(x - w*t) is strictly increasing
    # (F' >= 1), so each F sign tightens a per-point bracket and |F| bounds
    # the distance to the root.  Fall back to bisection whenever the Newton
    # step leaves the bracket or stops contracting it fast enough.
    w = np.full_like(x, m)
    lo = np.full_like(x, w_left)
    hi = np.full_like(x, w_right)
    dx_old = np.full_like(x, w_right - w_left)
    for _ in range(max_iter):
        y = x - w * t
        F = w - (m + d * np.tanh(y))
        if np.abs(F).max() <= tol:
            return w
        lo = np.where(F < 0.0, w, lo)
        hi = np.where(F > 0.0, w, hi)
        Fp = 1.0 + t * d * _sech2(y)
        step = w - F / Fp
        bisect = (step <= lo) | (step >= hi) \
            | (2.0 * np.abs(F) > np.abs(dx_old * Fp))
        w_new = np.where(bisect, 0.5 * (lo + hi), step)
        dx_old = np.abs(w_new - w)
        w = w_new
    raise NoConvergence("implicit Burgers solve did not converge")


def burgers_derivs(x, t, w_left, w_right, *, tol=1e-12, max_iter=100):
    """Return (w, w_x, w_t, w_xx) from the implicit solution."""
    x = np.asarray(x, dtype=float)
    m = 0.5 * (w_left + w_right)
    d = 0.5 * (w_right - w_left)
    if d == 0.0:
        z = np.zeros_like(x)
        return np.full_like(x, m), z, z.copy(), z.copy()
    w = burgers_eval(x, t, w_left, w_right, tol=tol, max_iter=max_iter)
    y = x - w * t
    s2 = _sech2(y)
    w0p = d * s2
    w0pp = -2.0 * d * s2 * np.tanh(y)
    den = 1.0 + t * w0p
    w_x = w0p / den
    w_t = -w * w_x
    w_xx = w0pp / den ** 3
    return w, w_x, w_t, w_xx


@dataclass(frozen=True)
class RarefactionLeg:
    """One fan of the decomposition, anchored at an end state."""

    family: int
    w_left: float
    w_right: float
    K: float
    u_anchor: float
    w_anchor: float
    theta_anchor: float

    @property
    def strength(self):
        return self.w_right - self.w_left

    @property
    def degenerate(self):
        return self.w_right == self.w_left


def build_rarefaction_leg(end: ThermoState, mid: ThermoState, family,
                          g: GasParams, entropy_tol=1e-8):
    """Leg connecting an end state to its middle state.

    family 1 fans run on the negative characteristic speed with the left
    end state as anchor; family 3 on the positive speed with the right
    end state.
    """
    if family not in (1, 3):
        raise ValueError("family must be 1 or 3")
    if mid.v < end.v:
        raise InvalidCurveDirection(
            "middle specific volume below the end state; not an expansion")
    s = entropy(end, g)
    if abs(entropy(mid, g) - s) > entropy_tol:
        raise ValueError("end and middle states are not on one isentrope")
    sign = -1 if family == 1 else +1
    w_end = lambda_pm(end.v, s, sign, g)
    w_mid = lambda_pm(mid.v, s, sign, g)
    if family == 1:
        w_left, w_right = w_end, w_mid
    else:
        w_left, w_right = w_mid, w_end
    K = math.sqrt(g.A * g.gamma * math.exp((g.gamma - 1.0) * s / g.R))
    return RarefactionLeg(family=family, w_left=float(w_left),
                          w_right=float(w_right), K=float(K),
                          u_anchor=end.u, w_anchor=float(w_end),
                          theta_anchor=end.theta)


def _state_of_w(leg: RarefactionLeg, w, g: GasParams):
    gam = g.gamma
    q = (gam - 1.0) / (gam + 1.0)
    aw = np.abs(w)
    V = (leg.K ** 2 / w ** 2) ** (1.0 / (gam + 1.0))
    U = leg.u_anchor + np.sign(w) * (2.0 / (gam - 1.0)) \
        * leg.K ** (2.0 / (gam + 1.0)) * (aw ** q - abs(leg.w_anchor) ** q)
    Theta = leg.theta_anchor * (aw / abs(leg.w_anchor)) ** (2.0 * q)
    return V, U, Theta


def rarefaction_eval(leg: RarefactionLeg, x, t, g: GasParams):
    """(V, U, Theta) of the leg at positions x, time t."""
    if leg.degenerate:
        x = np.asarray(x, dtype=float)
        V, U, Theta = _state_of_w(leg, np.full_like(x, leg.w_anchor), g)
        return V, U, Theta
    w = burgers_eval(x, t, leg.w_left, leg.w_right)
    return _state_of_w(leg, w, g)


def rarefaction_derivs(leg: RarefactionLeg, x, t, g: GasParams):
    """Fields and their x derivatives up to second order.

    Returns a dict with V, U, Theta, P, their _x derivatives, the _xx
    second derivatives, and U_t.  P is the leg pressure R*Theta/V.
    """
    gam = g.gamma
    if leg.degenerate:
        x = np.asarray(x, dtype=float)
        w = np.full_like(x, leg.w_anchor)
        w_x = np.zeros_like(x)
        w_t = np.zeros_like(x)
        w_xx = np.zeros_like(x)
    else:
        w, w_x, w_t, w_xx = burgers_derivs(x, t, leg.w_left, leg.w_right)
    V, U, Theta = _state_of_w(leg, w, g)
    P = g.R * Theta / V

    c2 = 2.0 / (gam + 1.0)
    dV = -c2 * V / w
    d2V = c2 * (gam + 3.0) / (gam + 1.0) * V / w ** 2
    dU = c2 * V
    d2U = c2 * dV
    dTh = c2 * (gam - 1.0) * Theta / w
    d2Th = c2 * (gam - 1.0) * (gam - 3.0) / (gam + 1.0) * Theta / w ** 2
    dP = 2.0 * gam / (gam + 1.0) * P / w

    out = {
        "V": V, "U": U, "Theta": Theta, "P": P, "w": w,
        "V_x": dV * w_x, "U_x": dU * w_x, "Theta_x": dTh * w_x,
        "P_x": dP * w_x,
        "V_xx": d2V * w_x ** 2 + dV * w_xx,
        "U_xx": d2U * w_x ** 2 + dU * w_xx,
        "Theta_xx": d2Th * w_x ** 2 + dTh * w_xx,
        "U_t": dU * w_t,
        "V_t": dV * w_t,
        "Theta_t": dTh * w_t,
    }
    return out
