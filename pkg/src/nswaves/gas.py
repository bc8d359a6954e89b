"""Ideal polytropic gas with power-law transport coefficients.

State variables live in Lagrangian coordinates: specific volume v, velocity u
and absolute temperature theta.  Pressure is p = R*theta/v, internal energy
e = c_nu*theta with c_nu = R/(gamma-1), and the transport coefficients follow
mu = mu_tilde*theta**alpha, kappa = kappa_tilde*theta**beta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class GasParams:
    """Constants of the gas model.

    A is the entropy gauge in p = A*v**(-gamma)*exp((gamma-1)*s/R); it
    defaults to R so that s(v=1, theta=1) = 0.  c_nu is derived from R and
    gamma on construction and cannot be supplied.
    """

    R: float = 1.0
    gamma: float = 5.0 / 3.0
    A: float | None = None
    mu_tilde: float = 1.0
    kappa_tilde: float = 1.0
    alpha: float = 0.0
    beta: float = 1.0
    c_nu: float = field(init=False)

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ValueError(f"gamma must exceed 1, got {self.gamma}")
        if self.A is None:
            object.__setattr__(self, "A", float(self.R))
        for name in ("R", "A", "mu_tilde", "kappa_tilde"):
            val = getattr(self, name)
            if not val > 0.0:
                raise ValueError(f"{name} must be positive, got {val}")
        if self.alpha < 0.0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if not self.beta > 0.0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        object.__setattr__(self, "c_nu", self.R / (self.gamma - 1.0))


@dataclass(frozen=True)
class ThermoState:
    """Point values (v, u, theta) with strict positivity of v and theta."""

    v: float
    u: float
    theta: float

    def __post_init__(self):
        if not self.v > 0.0:
            raise ValueError(f"specific volume must be positive, got {self.v}")
        if not self.theta > 0.0:
            raise ValueError(f"temperature must be positive, got {self.theta}")


def pressure(state: ThermoState, g: GasParams) -> float:
    """Thermal pressure R*theta/v."""
    return g.R * state.theta / state.v


def entropy(state: ThermoState, g: GasParams) -> float:
    """Specific entropy, normalized so s = 0 at v = 1, theta = A/R."""
    return (g.R / (g.gamma - 1.0)) * math.log(g.R * state.theta / g.A) \
        + g.R * math.log(state.v)


def theta_from_entropy(v, s, g: GasParams):
    """Temperature on the isentrope s at volume v (inverse of entropy)."""
    return (g.A / g.R) * v ** (1.0 - g.gamma) * np.exp((g.gamma - 1.0) * s / g.R)


def transport(theta, g: GasParams):
    """Viscosity and heat conductivity (mu, kappa) at temperature theta."""
    theta = np.asarray(theta, dtype=float)
    mu = g.mu_tilde * theta ** g.alpha
    kappa = g.kappa_tilde * theta ** g.beta
    if mu.ndim == 0:
        return float(mu), float(kappa)
    return mu, kappa


def lambda_pm(v, s, sign: int, g: GasParams):
    """Characteristic speed of the 1- or 3-family on the isentrope s.

    sign=-1 gives the backward (1-family) speed, sign=+1 the forward
    (3-family) speed.  Satisfies lambda**2 * v = gamma * p(v, s).
    """
    if sign not in (-1, 1):
        raise ValueError(f"sign must be -1 or +1, got {sign}")
    v = np.asarray(v, dtype=float)
    val = sign * np.sqrt(
        g.A * g.gamma * v ** (-g.gamma - 1.0)
        * np.exp((g.gamma - 1.0) * s / g.R))
    if val.ndim == 0:
        return float(val)
    return val


def phi_entropy(z):
    """Convex entropy kernel z - ln(z) - 1, nonnegative with minimum at 1."""
    z = np.asarray(z, dtype=float)
    if np.any(z <= 0.0):
        raise ValueError("phi_entropy requires positive argument")
    val = z - np.log(z) - 1.0
    if val.ndim == 0:
        return float(val)
    return val
