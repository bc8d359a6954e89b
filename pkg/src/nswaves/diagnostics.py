"""Perturbation functionals and run diagnostics.

The solution is compared against the wave ansatz through the perturbation
triple (phi, psi, zeta) = (v - V, u - U, theta - Theta) sampled on cell
centers.  From it we evaluate

    E = int( psi^2/2 + R Theta Phi(v/V) + c_nu Theta Phi(theta/Theta) ) dx
    D = int( psi_x^2/(theta v) + theta^beta zeta_x^2/(theta^2 v) ) dx
    W = int( (phi^2 + psi^2 + zeta^2) w^2 ) dx,
        w(x,t) = (1+t)^(-1/2) exp(-alpha x^2/(1+t))

with Phi(z) = z - ln z - 1.  A Recorder streams these to CSV with the fixed
column order documented in CSV_HEADER; decay_report turns a record sequence
into decay factors, log-log slopes and threshold verdicts.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainTooNarrow, InsufficientData
from .gas import GasParams, phi_entropy

CSV_HEADER = ("t,E,D,W,sup_phi,sup_psi,sup_zeta,h1,min_v,max_v,"
              "min_theta,max_theta,mass_drift,momentum_drift")

SNAPSHOT_HEADER = "x,v,u,theta,V,U,Theta,phi,psi,zeta"

DEFAULT_THRESHOLDS = {
    "decay_factor": 5.0,     # require sup(t0)/sup(t_end) >= this
    "energy_kappa": 2.0,     # E(t) <= kappa*E(0) + c
    "energy_c": 1e-6,
    "tail_fraction": 0.2,    # final decade share of int D dt
}


@dataclass
class PerturbationField:
    """(phi, psi, zeta) on cell centers at one instant.

    psi is the edge-valued velocity mismatch averaged onto centers, so an
    unperturbed initial state gives exact zeros.
    """
    x: np.ndarray
    phi: np.ndarray
    psi: np.ndarray
    zeta: np.ndarray
    t: float


def perturbation(state, ansatz, g: GasParams) -> PerturbationField:
    """Pointwise difference between a state and the ansatz at state.t."""
    xc = state.grid.centers
    V, _, Th = ansatz.eval(xc, state.t)
    _, U_e, _ = ansatz.eval(state.grid.edges, state.t)
    du = state.u - U_e
    return PerturbationField(
        x=xc,
        phi=state.v - V,
        psi=0.5 * (du[1:] + du[:-1]),
        zeta=state.theta - Th,
        t=state.t,
    )


def basic_energy(p: PerturbationField, state, ansatz, g: GasParams) -> float:
    """Relative-entropy energy of the perturbation (trapezoid in x)."""
    V, _, Th = ansatz.eval(p.x, p.t)
    integrand = 0.5 * p.psi ** 2 \
        + g.R * Th * phi_entropy(state.v / V) \
        + g.c_nu * Th * phi_entropy(state.theta / Th)
    return float(np.trapezoid(integrand, p.x))


def dissipation(p: PerturbationField, state, g: GasParams) -> float:
    """Weighted gradient integral int(psi_x^2/(theta v) +
    theta^beta zeta_x^2/(theta^2 v)) dx."""
    psi_x = np.gradient(p.psi, p.x, edge_order=2)
    zeta_x = np.gradient(p.zeta, p.x, edge_order=2)
    th, v = state.theta, state.v
    integrand = psi_x ** 2 / (th * v) \
        + th ** g.beta * zeta_x ** 2 / (th ** 2 * v)
    return float(np.trapezoid(integrand, p.x))


def window_weight(x, t, alpha):
    """Diffusion window w(x,t) = (1+t)^(-1/2) exp(-alpha x^2/(1+t))."""
    tau = 1.0 + t
    return np.exp(-alpha * np.asarray(x) ** 2 / tau) / np.sqrt(tau)


def window_l2_squared(t, alpha):
    """Closed form of int w(x,t)^2 dx over the line."""
    return math.sqrt(math.pi / (2.0 * alpha)) / math.sqrt(1.0 + t)


def window_norm(p: PerturbationField, t=None, alpha=0.25) -> float:
    """int (phi^2 + psi^2 + zeta^2) w(x,t)^2 dx by trapezoid."""
    if t is None:
        t = p.t
    w2 = window_weight(p.x, t, alpha) ** 2
    integrand = (p.phi ** 2 + p.psi ** 2 + p.zeta ** 2) * w2
    return float(np.trapezoid(integrand, p.x))


def grad_l2_squared(p: PerturbationField) -> float:
    """int (phi_x^2 + psi_x^2 + zeta_x^2) dx, central differences."""
    total = 0.0
    for f in (p.phi, p.psi, p.zeta):
        fx = np.gradient(f, p.x, edge_order=2)
        total += float(np.trapezoid(fx ** 2, p.x))
    return total


def h1_norm(p: PerturbationField) -> float:
    """sqrt of L2(phi,psi,zeta)^2 + L2 of their gradients."""
    l2 = float(np.trapezoid(p.phi ** 2 + p.psi ** 2 + p.zeta ** 2, p.x))
    return math.sqrt(l2 + grad_l2_squared(p))


def entropy_gauge_roots(C0):
    """The two roots alpha1 < 1 < alpha2 of y - ln y - 1 = C0, by bisection."""
    if C0 <= 0.0:
        raise ValueError("C0 must be positive")

    def f(y):
        return y - math.log(y) - 1.0 - C0

    # lower root in (0, 1): f -> +inf as y -> 0+, f(1) = -C0 < 0
    lo = 1.0
    while f(lo * 0.5) < 0.0:
        lo *= 0.5
    lo *= 0.5
    hi = 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    alpha1 = 0.5 * (lo + hi)

    # upper root in (1, inf)
    hi = 2.0
    while f(hi) < 0.0:
        hi *= 2.0
    lo = 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    alpha2 = 0.5 * (lo + hi)
    return alpha1, alpha2


def cell_average_bounds(state, ansatz, C0):
    """Check unit-interval averages of v/V and theta/Theta against the
    entropy-gauge window [alpha1, alpha2] implied by the bound C0.

    Jensen: Phi(cell average) <= cell average of Phi <= C0 forces every
    unit-cell average into [alpha1, alpha2].  Returns (ok, report).
    """
    xc = state.grid.centers
    k_lo = math.ceil(xc[0])
    k_hi = math.floor(xc[-1]) - 1
    n_cells = k_hi - k_lo + 1
    if n_cells < 3:
        raise DomainTooNarrow(
            "need >= 3 unit cells inside the domain, have %d" % n_cells)
    alpha1, alpha2 = entropy_gauge_roots(C0)
    V, _, Th = ansatz.eval(xc, state.t)
    v_tilde = state.v / V
    th_tilde = state.theta / Th
    lo = np.inf
    hi = -np.inf
    for k in range(k_lo, k_hi + 1):
        sel = (xc >= k) & (xc < k + 1)
        for ratio in (v_tilde, th_tilde):
            avg = float(ratio[sel].mean())
            lo = min(lo, avg)
            hi = max(hi, avg)
    ok = bool(alpha1 <= lo and hi <= alpha2)
    report = {
        "alpha1": alpha1,
        "alpha2": alpha2,
        "min_average": lo,
        "max_average": hi,
        "n_unit_cells": n_cells,
        "C0": C0,
        "ok": ok,
    }
    return ok, report


@dataclass
class DiagnosticsRecord:
    t: float
    E: float
    D: float
    W: float
    sup_phi: float
    sup_psi: float
    sup_zeta: float
    h1: float
    min_v: float
    max_v: float
    min_theta: float
    max_theta: float
    mass_drift: float
    momentum_drift: float

    def csv_row(self):
        vals = (self.t, self.E, self.D, self.W, self.sup_phi, self.sup_psi,
                self.sup_zeta, self.h1, self.min_v, self.max_v,
                self.min_theta, self.max_theta, self.mass_drift,
                self.momentum_drift)
        return ",".join("%.17g" % v for v in vals)


class Recorder:
    """Streams DiagnosticsRecords for one run; single writer per run.

    mass_drift is the interior mass change minus the accumulated boundary
    flux (conservation bookkeeping error, ~roundoff for the scheme), same
    for momentum.  Baselines are taken from the first sampled state.
    """

    def __init__(self, ansatz, g: GasParams, alpha=0.25, csv_path=None):
        self.ansatz = ansatz
        self.g = g
        self.alpha = alpha
        self.records = []
        self._grads = []
        self._mass0 = None
        self._mom0 = None
        self._fh = None
        if csv_path is not None:
            self._fh = open(csv_path, "w")
            self._fh.write(CSV_HEADER + "\n")

    def sample(self, state) -> DiagnosticsRecord:
        if self._mass0 is None:
            self._mass0 = state.interior_mass()
            self._mom0 = state.interior_momentum()
        p = perturbation(state, self.ansatz, self.g)
        rec = DiagnosticsRecord(
            t=state.t,
            E=basic_energy(p, state, self.ansatz, self.g),
            D=dissipation(p, state, self.g),
            W=window_norm(p, alpha=self.alpha),
            sup_phi=float(np.abs(p.phi).max()),
            sup_psi=float(np.abs(p.psi).max()),
            sup_zeta=float(np.abs(p.zeta).max()),
            h1=h1_norm(p),
            min_v=float(state.v.min()),
            max_v=float(state.v.max()),
            min_theta=float(state.theta.min()),
            max_theta=float(state.theta.max()),
            mass_drift=(state.interior_mass() - self._mass0)
            - state.mass_flux,
            momentum_drift=(state.interior_momentum() - self._mom0)
            - state.momentum_flux,
        )
        self.records.append(rec)
        self._grads.append(grad_l2_squared(p))
        if self._fh is not None:
            self._fh.write(rec.csv_row() + "\n")
            self._fh.flush()
        return rec

    def close(self):
        if self._fh is not None:
            self._fh.close()
            self._fh = None

    def time_integrals(self):
        """Trapezoid-in-t integrals of D, W and the gradient L2."""
        t = np.array([r.t for r in self.records])
        out = {
            "D": float(np.trapezoid([r.D for r in self.records], t)),
            "W": float(np.trapezoid([r.W for r in self.records], t)),
            "grad": float(np.trapezoid(self._grads, t)),
        }
        return out

    def smallest_admissible_C(self):
        """Least C with int W dt <= C (1 + int grad dt)."""
        ints = self.time_integrals()
        return ints["W"] / (1.0 + ints["grad"])


def write_snapshot(path, state, ansatz, g: GasParams):
    """Columnar field dump on cell centers (u averaged from edges)."""
    p = perturbation(state, ansatz, g)
    V, U, Th = ansatz.eval(p.x, state.t)
    uc = 0.5 * (state.u[1:] + state.u[:-1])
    cols = (p.x, state.v, uc, state.theta, V, U, Th, p.phi, p.psi, p.zeta)
    with open(path, "w") as fh:
        fh.write(SNAPSHOT_HEADER + "\n")
        for row in zip(*cols):
            fh.write(",".join("%.17g" % v for v in row) + "\n")


def _loglog_slope(t, q):
    """LSQ slope of log q vs log(1+t); None if q is not positive."""
    t = np.asarray(t, dtype=float)
    q = np.asarray(q, dtype=float)
    if np.any(q <= 0.0):
        return None
    return float(np.polyfit(np.log1p(t), np.log(q), 1)[0])


def decay_report(records, thresholds=None):
    """Decay factors, slopes and verdicts from a record sequence.

    Requires at least 10 records spanning a decade in 1+t.  The decay
    factor convention is sup(t_end)/sup(t_0) (< 1 means decay); the
    combined sup is max(sup_phi, sup_psi, sup_zeta).
    """
    th = dict(DEFAULT_THRESHOLDS)
    if thresholds:
        th.update(thresholds)
    if len(records) < 10:
        raise InsufficientData("need >= 10 records, have %d" % len(records))
    t = np.array([r.t for r in records])
    if (1.0 + t[-1]) < 10.0 * (1.0 + t[0]):
        raise InsufficientData(
            "records span (1+t) ratio %.3g < 10"
            % ((1.0 + t[-1]) / (1.0 + t[0])))

    sups = {
        "phi": np.array([r.sup_phi for r in records]),
        "psi": np.array([r.sup_psi for r in records]),
        "zeta": np.array([r.sup_zeta for r in records]),
    }
    combined = np.max([sups["phi"], sups["psi"], sups["zeta"]], axis=0)
    E = np.array([r.E for r in records])
    D = np.array([r.D for r in records])

    def factor(q):
        if q[0] == 0.0:
            return 1.0 if q[-1] == 0.0 else math.inf
        return float(q[-1] / q[0])

    # dissipation accumulation and its final-decade share
    total_D = float(np.trapezoid(D, t))
    t_split = t[-1] / 10.0
    if t_split <= t[0]:
        tail_fraction = 1.0
    else:
        tt = np.unique(np.concatenate([t[t >= t_split], [t_split]]))
        Dt = np.interp(tt, t, D)
        tail = float(np.trapezoid(Dt, tt))
        tail_fraction = tail / total_D if total_D > 0.0 else 0.0

    energy_bound = th["energy_kappa"] * E[0] + th["energy_c"]
    min_v = min(r.min_v for r in records)
    min_theta = min(r.min_theta for r in records)

    report = {
        "n_records": len(records),
        "t_first": float(t[0]),
        "t_last": float(t[-1]),
        "sup_initial": float(combined[0]),
        "sup_final": float(combined[-1]),
        "decay_factor": factor(combined),
        "decay_factor_phi": factor(sups["phi"]),
        "decay_factor_psi": factor(sups["psi"]),
        "decay_factor_zeta": factor(sups["zeta"]),
        "slope_phi": _loglog_slope(t, sups["phi"]),
        "slope_psi": _loglog_slope(t, sups["psi"]),
        "slope_zeta": _loglog_slope(t, sups["zeta"]),
        "slope_combined": _loglog_slope(t, combined),
        "energy_initial": float(E[0]),
        "energy_max": float(E.max()),
        "energy_bound": float(energy_bound),
        "dissipation_total": total_D,
        "tail_fraction": tail_fraction,
        "min_v": min_v,
        "min_theta": min_theta,
        "thresholds": th,
    }
    report["positivity_ok"] = bool(min_v > 0.0 and min_theta > 0.0)
    report["decay_ok"] = bool(
        report["decay_factor"] <= 1.0 / th["decay_factor"])
    report["energy_ok"] = bool(E.max() <= energy_bound)
    report["dissipation_ok"] = bool(tail_fraction < th["tail_fraction"])
    report["passes"] = bool(report["positivity_ok"] and report["decay_ok"]
                            and report["energy_ok"]
                            and report["dissipation_ok"])
    return report
