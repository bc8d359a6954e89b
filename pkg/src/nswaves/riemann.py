"""Decomposition of a Riemann pair into rarefaction / contact / rarefaction.

The 1-family and 3-family wave curves are integral curves of the
characteristic fields on fixed isentropes; the contact sits between the two
middle states and carries a jump in (v, theta) at continuous (u, p).  A
monotone scalar root-find in the middle pressure connects the end states.
No shock branches: end states outside the R1-C-R3 region raise NotInR1CR3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidCurveDirection, NoConvergence, NotInR1CR3
from .gas import GasParams, ThermoState, entropy, pressure


@dataclass(frozen=True)
class WaveDecomposition:
    """Middle states and scalar summaries of an R1-C-R3 pattern.

    strengths holds (d_r1, d_cd, d_r3): the 1-rarefaction strength
    |dv|+|du|+|dtheta| across the left fan, the contact strength
    |theta_+^m - theta_-^m|, and the 3-rarefaction strength across the
    right fan.  delta_min is the smallest of the three.
    """

    left_mid: ThermoState
    right_mid: ThermoState
    p_mid: float
    strengths: tuple[float, float, float]
    delta_min: float

    @property
    def u_mid(self) -> float:
        return self.left_mid.u


@dataclass(frozen=True)
class SameOrderResult:
    """Outcome of the comparable-strength test for a decomposition."""

    degenerate: bool
    same_order: bool | None
    total: float
    smallest: float


def _isentrope_coeff(s: float, g: GasParams) -> float:
    """E(s) = exp((gamma-1) s / R), so p(v, s) = A v^-gamma E."""
    return math.exp((g.gamma - 1.0) * s / g.R)


def _lambda_integral(va: float, vb: float, s: float, sign: int, g: GasParams) -> float:
    """Closed form of int_va^vb lambda_sign(eta, s) deta.

    lambda = sign*K*eta^-(gamma+1)/2 with K = sqrt(A*gamma*E) integrates to a
    power law; no quadrature needed.
    """
    K = math.sqrt(g.A * g.gamma * _isentrope_coeff(s, g))
    ex = 0.5 * (1.0 - g.gamma)
    return sign * K * (vb ** ex - va ** ex) / ex


def rarefaction_curve(anchor: ThermoState, v_target: float, family: int,
                      g: GasParams) -> ThermoState:
    """State reached from anchor along the family-1 or family-3 wave curve.

    The curve keeps the anchor's entropy; u follows
    u = u_a - int_{v_a}^{v} lambda(eta, s) deta.  Expansion only: v_target
    below anchor.v raises InvalidCurveDirection.
    """
    if family not in (1, 3):
        raise ValueError(f"family must be 1 or 3, got {family}")
    if v_target < anchor.v:
        raise InvalidCurveDirection(
            f"family-{family} curve requires v >= {anchor.v}, got {v_target}")
    sign = -1 if family == 1 else +1
    s = entropy(anchor, g)
    u = anchor.u - _lambda_integral(anchor.v, v_target, s, sign, g)
    theta = anchor.theta * (anchor.v / v_target) ** (g.gamma - 1.0)
    return ThermoState(v_target, u, theta)


def _curve_u_at_pressure(end: ThermoState, p: float, s: float, sign: int,
                         g: GasParams) -> tuple[float, float, float]:
    """(v, u, theta) on the wave curve from `end` at middle pressure p."""
    v = (g.A * _isentrope_coeff(s, g) / p) ** (1.0 / g.gamma)
    u = end.u - _lambda_integral(end.v, v, s, sign, g)
    theta = p * v / g.R
    return v, u, theta


def _strengths(left: ThermoState, lm: ThermoState, right: ThermoState,
               rm: ThermoState) -> tuple[float, float, float]:
    d_r1 = abs(lm.v - left.v) + abs(lm.u - left.u) + abs(lm.theta - left.theta)
    d_cd = abs(rm.theta - lm.theta)
    d_r3 = abs(rm.v - right.v) + abs(rm.u - right.u) + abs(rm.theta - right.theta)
    return (d_r1, d_cd, d_r3)


def solve_wave_pattern(left: ThermoState, right: ThermoState, g: GasParams,
                       tol: float = 1e-10, max_steps: int = 200) -> WaveDecomposition:
    """Connect end states by R1-C-R3 and return the middle states.

    Solves f(p) = u_left_curve(p) - u_right_curve(p) = 0 for the common
    middle pressure with a bracketed Newton iteration (bisection fallback);
    f is strictly decreasing on (0, min(p_left, p_right)].  tol bounds the
    residual velocity mismatch |f| at acceptance.
    """
    if left == right:
        # exact contact-compatible degenerate pattern, bypass the root-find
        return WaveDecomposition(left, right, pressure(left, g),
                                 (0.0, 0.0, 0.0), 0.0)

    p_l, p_r = pressure(left, g), pressure(right, g)
    s_l, s_r = entropy(left, g), entropy(right, g)

    if left.u == right.u and p_l == p_r:
        # pure contact: middle states coincide with the ends
        strengths = _strengths(left, left, right, right)
        return WaveDecomposition(left, right, p_l, strengths,
                                 min(strengths))

    p_hi = min(p_l, p_r)

    def f_and_states(p):
        vl, ul, thl = _curve_u_at_pressure(left, p, s_l, -1, g)
        vr, ur, thr = _curve_u_at_pressure(right, p, s_r, +1, g)
        return ul - ur, (vl, ul, thl), (vr, ur, thr)

    f_hi, _, _ = f_and_states(p_hi)
    if f_hi > tol:
        raise NotInR1CR3(
            "middle pressure would exceed an end pressure (shock required); "
            f"velocity mismatch at p={p_hi} is {f_hi}")

    # vacuum guard: f(p -> 0+) has a finite limit set by the escape velocities
    K_l = math.sqrt(g.A * g.gamma * _isentrope_coeff(s_l, g))
    K_r = math.sqrt(g.A * g.gamma * _isentrope_coeff(s_r, g))
    ex = 0.5 * (1.0 - g.gamma)
    u_l_sup = left.u - K_l * left.v ** ex / ex
    u_r_inf = right.u + K_r * right.v ** ex / ex
    if u_l_sup - u_r_inf <= 0.0:
        raise NotInR1CR3("end states separate into vacuum; no contact possible")

    p_lo = p_hi
    f_lo = f_hi
    while f_lo <= 0.0:
        p_lo *= 0.5
        f_lo, _, _ = f_and_states(p_lo)
        if p_lo < 1e-300:
            raise NotInR1CR3("no positive middle pressure brackets the root")

    # bracket [p_lo, p_hi] with f(p_lo) > 0 >= f(p_hi); Newton with the exact
    # derivative f'(p) = -(sqrt(v_l) + sqrt(v_r))/sqrt(gamma p)
    p = p_hi if f_hi == 0.0 else 0.5 * (p_lo + p_hi)
    for _ in range(max_steps):
        f, sl_states, sr_states = f_and_states(p)
        if abs(f) <= tol:
            vl, ul, thl = sl_states
            vr, ur, thr = sr_states
            u_mid = 0.5 * (ul + ur)
            lm = ThermoState(vl, u_mid, thl)
            rm = ThermoState(vr, u_mid, thr)
            strengths = _strengths(left, lm, right, rm)
            return WaveDecomposition(lm, rm, p, strengths, min(strengths))
        if f > 0.0:
            p_lo = p
        else:
            p_hi = p
        vl = sl_states[0]
        vr = sr_states[0]
        fp = -(math.sqrt(vl) + math.sqrt(vr)) / math.sqrt(g.gamma * p)
        p_new = p - f / fp
        if not (p_lo < p_new < p_hi):
            p_new = 0.5 * (p_lo + p_hi)
        p = p_new
    raise NoConvergence(
        f"wave-pattern root-find did not reach |du| <= {tol} in {max_steps} steps")


def same_order_check(d: WaveDecomposition, C: float) -> SameOrderResult:
    """Test whether the three wave strengths are mutually comparable.

    True means sum of strengths <= C * min(strengths).  Patterns with an
    exactly-zero strength are flagged degenerate and carry no verdict.
    """
    total = float(sum(d.strengths))
    smallest = float(min(d.strengths))
    if smallest == 0.0:
        return SameOrderResult(True, None, total, smallest)
    return SameOrderResult(False, total <= C * smallest, total, smallest)
