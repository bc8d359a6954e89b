"""Explicit staggered-grid solver in mass coordinates.

Velocity lives on cell edges, specific volume and temperature on cell
centers.  Central second-order differences in space, forward Euler in
time; the step size is diffusion-limited (stable_dt), which keeps the
explicit scheme stable for every case in the test suite.

Boundary cells and edges are pinned to the background ansatz each step
(Dirichlet), so the interior update telescopes exactly:

    sum_i dv_i * dx = dt * (u[n-1] - u[1])
    sum_j du_j * dx = dt * (sigma[n-1] - sigma[0]) + forcing

Both right-hand sides are accumulated in the state, which lets the
diagnostics report conservation drift down to rounding noise.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (MaxStepsExceeded, NonPositiveInitialData,
                     PositivityLoss)
from .gas import GasParams

__all__ = ["Grid1D", "SolverConfig", "SimulationState", "make_grid",
           "initialize", "stable_dt", "step", "advance"]


@dataclass(frozen=True)
class Grid1D:
    edges: np.ndarray
    centers: np.ndarray

    @property
    def dx(self):
        return float(self.edges[1] - self.edges[0])

    @property
    def n_cells(self):
        return self.centers.size


def make_grid(x_min, x_max, n_cells):
    """Uniform grid; symmetric domains get bitwise mirror-symmetric nodes."""
    if n_cells < 4:
        raise ValueError("need at least 4 cells")
    if x_max <= x_min:
        raise ValueError("empty domain")
    dx = (x_max - x_min) / n_cells
    if x_min == -x_max:
        edges = dx * (np.arange(n_cells + 1) - n_cells / 2.0)
        centers = dx * (np.arange(n_cells) - (n_cells - 1) / 2.0)
    else:
        edges = x_min + dx * np.arange(n_cells + 1)
        centers = x_min + dx * (np.arange(n_cells) + 0.5)
    return Grid1D(edges=edges, centers=centers)


@dataclass(frozen=True)
class SolverConfig:
    cfl: float = 0.4
    diff_safety: float = 0.4
    max_steps: int = 50_000_000
    forcing_momentum: object = None   # callable(x, t) on interior edges
    forcing_energy: object = None     # callable(x, t) on interior centers


@dataclass
class SimulationState:
    grid: Grid1D
    t: float
    u: np.ndarray
    v: np.ndarray
    theta: np.ndarray
    mass_flux: float = 0.0
    momentum_flux: float = 0.0
    steps: int = 0

    def interior_mass(self):
        return float(self.v[1:-1].sum() * self.grid.dx)

    def interior_momentum(self):
        return float(self.u[1:-1].sum() * self.grid.dx)


def initialize(ansatz, grid: Grid1D, g: GasParams, perturbation=None):
    """State at t = 0: ansatz fields plus an optional perturbation."""
    V_c, _, Th_c = ansatz.eval(grid.centers, 0.0)
    _, U_e, _ = ansatz.eval(grid.edges, 0.0)
    v = np.array(V_c, dtype=float)
    theta = np.array(Th_c, dtype=float)
    u = np.array(U_e, dtype=float)
    if perturbation is not None:
        v = v + perturbation.phi0(grid.centers)
        u = u + perturbation.psi0(grid.edges)
        theta = theta + perturbation.zeta0(grid.centers)
    if v.min() <= 0.0 or theta.min() <= 0.0:
        raise NonPositiveInitialData(
            "initial data leaves the positive cone (min v %.3e, "
            "min theta %.3e)" % (v.min(), theta.min()))
    return SimulationState(grid=grid, t=0.0, u=u, v=v, theta=theta)


def stable_dt(state: SimulationState, g: GasParams, config: SolverConfig):
    dx = state.grid.dx
    p = g.R * state.theta / state.v
    lam = np.sqrt(g.gamma * p / state.v).max()
    dt_adv = config.cfl * dx / lam
    d_theta = (g.c_nu * state.v / (g.kappa_tilde
                                   * state.theta ** g.beta)).min()
    d_mom = (state.v / g.mu_tilde).min()
    dt_diff = 0.5 * config.diff_safety * dx * dx * min(d_theta, d_mom)
    return min(dt_adv, dt_diff)


def step(state: SimulationState, dt, ansatz, g: GasParams,
         config: SolverConfig, t_new=None):
    """One forward Euler step; raises PositivityLoss without mutating."""
    grid = state.grid
    dx = grid.dx
    u, v, th = state.u, state.v, state.theta
    t = state.t
    if t_new is None:
        t_new = t + dt

    u_x = np.diff(u) / dx                       # centers
    p = g.R * th / v
    sigma = -p + g.mu_tilde * u_x / v           # centers
    du = (sigma[1:] - sigma[:-1]) / dx          # interior edges
    if config.forcing_momentum is not None:
        f_mom = config.forcing_momentum(grid.edges[1:-1], t)
        du = du + f_mom
    else:
        f_mom = None

    th_e = 0.5 * (th[1:] + th[:-1])
    v_e = 0.5 * (v[1:] + v[:-1])
    q = g.kappa_tilde * th_e ** g.beta * np.diff(th) / (dx * v_e)
    heat_div = (q[1:] - q[:-1]) / dx            # interior centers
    dth = -p[1:-1] * u_x[1:-1] + heat_div \
        + g.mu_tilde * u_x[1:-1] ** 2 / v[1:-1]
    if config.forcing_energy is not None:
        dth = dth + config.forcing_energy(grid.centers[1:-1], t)
    dth = dth / g.c_nu

    new_u = u.copy()
    new_v = v.copy()
    new_th = th.copy()
    new_u[1:-1] = u[1:-1] + dt * du
    new_v[1:-1] = v[1:-1] + dt * u_x[1:-1]
    new_th[1:-1] = th[1:-1] + dt * dth

    # Dirichlet pinning to the ansatz at the new time
    bpos = np.array([grid.centers[0], grid.centers[-1],
                     grid.edges[0], grid.edges[-1]])
    Vb, Ub, Thb = ansatz.eval(bpos, t_new)
    new_v[0], new_v[-1] = Vb[0], Vb[1]
    new_th[0], new_th[-1] = Thb[0], Thb[1]
    new_u[0], new_u[-1] = Ub[2], Ub[3]

    if new_v[1:-1].min() <= 0.0 or new_th[1:-1].min() <= 0.0 \
            or new_v[0] <= 0.0 or new_v[-1] <= 0.0 \
            or new_th[0] <= 0.0 or new_th[-1] <= 0.0:
        raise PositivityLoss("positivity lost at t = %.6g (dt = %.3e)"
                             % (t, dt))

    state.u, state.v, state.theta = new_u, new_v, new_th
    state.t = t_new
    state.mass_flux += dt * (u[-2] - u[1])
    mom = dt * (sigma[-1] - sigma[0])
    if f_mom is not None:
        mom += dt * dx * f_mom.sum()
    state.momentum_flux += mom
    state.steps += 1
    return state


def advance(state: SimulationState, ansatz, g: GasParams,
            config: SolverConfig, t_target):
    """March the state to t_target with stability-limited steps.

    A step that loses positivity is retried once at half the step size;
    a second failure propagates PositivityLoss.
    """
    if t_target < state.t:
        raise ValueError("cannot advance backwards")
    while state.t < t_target:
        if state.steps >= config.max_steps:
            raise MaxStepsExceeded("step budget exhausted at t = %.6g"
                                   % state.t)
        dt = stable_dt(state, g, config)
        t_new = None
        if state.t + dt >= t_target:
            dt = t_target - state.t
            t_new = t_target
        try:
            step(state, dt, ansatz, g, config, t_new=t_new)
        except PositivityLoss:
            step(state, 0.5 * dt, ansatz, g, config)
    return state
