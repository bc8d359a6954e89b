"""Scenario presets: ansatz assembly, perturbations, run and study drivers.

run_scenario marches a configured initial-value problem while streaming
diagnostics, then writes a JSON manifest with verdicts.  A "gaussian"
perturbation is an isobaric temperature bump: zeta0 = a*exp(-4 ln2 ((x-c)/w)^2)
with w the full width at half maximum, phi0 = (V/Theta) zeta0 (so the initial
pressure is unperturbed) and psi0 = 0.  A "file" perturbation interpolates
columns x,phi,psi,zeta onto the grid, zero outside the tabulated range.
"""

import json
import math
import os
import time
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .composite import CompositeAnsatz, build_composite
from .config import RunConfig, serialize_config
from .diagnostics import Recorder, decay_report, write_snapshot
from .errors import InsufficientData, NSWavesError, ParseError
from .mms import ManufacturedSolution
from .solver import SolverConfig, advance, initialize, make_grid


class GaussianPerturbation:
    """Isobaric FWHM-parameterized bump tied to an ansatz at t = 0."""

    def __init__(self, amplitude, width, center, ansatz):
        if not width > 0.0:
            raise ValueError("width must be positive")
        self.amplitude = amplitude
        self.width = width
        self.center = center
        self.ansatz = ansatz

    def _bump(self, x):
        y = (np.asarray(x, dtype=float) - self.center) / self.width
        return self.amplitude * np.exp(-4.0 * math.log(2.0) * y ** 2)

    def zeta0(self, x):
        return self._bump(x)

    def phi0(self, x):
        V, _, Th = self.ansatz.eval(np.asarray(x, dtype=float), 0.0)
        return V / Th * self._bump(x)

    def psi0(self, x):
        return np.zeros_like(np.asarray(x, dtype=float))


class FilePerturbation:
    """Tabulated x,phi,psi,zeta columns, linearly interpolated."""

    def __init__(self, path):
        try:
            data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        except (OSError, ValueError) as exc:
            raise ParseError(f"cannot read perturbation file {path}: {exc}") \
                from None
        if data.shape[1] != 4:
            raise ParseError(
                f"perturbation file {path} needs 4 columns x,phi,psi,zeta, "
                f"found {data.shape[1]}")
        order = np.argsort(data[:, 0])
        self.x = data[order, 0]
        self.cols = data[order, 1:]

    def _interp(self, x, j):
        return np.interp(np.asarray(x, dtype=float), self.x, self.cols[:, j],
                         left=0.0, right=0.0)

    def phi0(self, x):
        return self._interp(x, 0)

    def psi0(self, x):
        return self._interp(x, 1)

    def zeta0(self, x):
        return self._interp(x, 2)


def make_ansatz(cfg: RunConfig):
    g = cfg.gas()
    scenario = cfg["scenario"]
    if scenario == "manufactured":
        return ManufacturedSolution(gas=g)
    left = cfg.left()
    right = left if scenario == "quiescent" else cfg.right()
    return build_composite(left, right, g, L_xi=cfg["profile.L_xi"],
                           n_nodes=cfg["profile.n_nodes"],
                           tol=cfg["profile.tol"])


def make_perturbation(cfg: RunConfig, ansatz):
    kind = cfg["perturbation.kind"]
    if kind == "none":
        return None
    if kind == "gaussian":
        return GaussianPerturbation(cfg["perturbation.amplitude"],
                                    cfg["perturbation.width"],
                                    cfg["perturbation.center"], ansatz)
    return FilePerturbation(cfg.resolve_path(cfg["perturbation.path"]))


def window_alpha(cfg: RunConfig, ansatz):
    """Configured window rate, or the fitted profile rate / 4."""
    if cfg["window.alpha"] > 0.0:
        return cfg["window.alpha"]
    if isinstance(ansatz, CompositeAnsatz):
        return ansatz.profile.decay_c1 / 4.0
    return 0.25


def record_times(t_end, n_records):
    """Sampling schedule, geometric in 1+t, pinned to 0 and t_end."""
    ts = np.geomspace(1.0, 1.0 + t_end, n_records) - 1.0
    ts[0] = 0.0
    ts[-1] = t_end
    return ts


def _mms_forcing_config(cfg: RunConfig, ansatz):
    kwargs = dict(cfl=cfg["solver.cfl"], diff_safety=cfg["solver.diff_safety"],
                  max_steps=cfg["solver.max_steps"])
    if isinstance(ansatz, ManufacturedSolution):
        kwargs["forcing_momentum"] = ansatz.forcing_momentum
        kwargs["forcing_energy"] = ansatz.forcing_energy
    return SolverConfig(**kwargs)


def _verdicts(cfg: RunConfig, recorder):
    scenario = cfg["scenario"]
    records = recorder.records
    sup_all = max(max(r.sup_phi, r.sup_psi, r.sup_zeta) for r in records)
    if scenario == "quiescent":
        passes = bool(sup_all < 1e-10)
        return {"scenario": scenario, "sup_max": sup_all, "passes": passes}
    if scenario == "manufactured":
        return {"scenario": scenario, "sup_max": sup_all, "passes": True}
    try:
        rep = decay_report(records, cfg.thresholds())
    except InsufficientData as exc:
        return {"scenario": scenario, "sup_max": sup_all, "passes": False,
                "insufficient_data": str(exc)}
    rep["scenario"] = scenario
    rep["sup_max"] = sup_all
    return rep


def run_scenario(cfg: RunConfig, out_dir):
    """Execute one configured run; returns (and writes) the manifest."""
    os.makedirs(out_dir, exist_ok=True)
    started = datetime.now(timezone.utc).isoformat()
    t0 = time.monotonic()
    manifest = {
        "version": __version__,
        "scenario": cfg["scenario"],
        "seed_label": cfg["seed_label"],
        "config": serialize_config(cfg),
        "started": started,
        "files": {},
        "error": None,
    }

    def finish(error=None):
        manifest["finished"] = datetime.now(timezone.utc).isoformat()
        manifest["wall_seconds"] = time.monotonic() - t0
        manifest["error"] = error
        path = os.path.join(out_dir, "manifest.json")
        with open(path, "w") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")
        manifest["files"]["manifest"] = path
        return manifest

    recorder = None
    try:
        g = cfg.gas()
        ansatz = make_ansatz(cfg)
        grid = make_grid(cfg["grid.x_min"], cfg["grid.x_max"],
                         cfg["grid.n_cells"])
        pert = make_perturbation(cfg, ansatz)
        state = initialize(ansatz, grid, g, perturbation=pert)
        solver_cfg = _mms_forcing_config(cfg, ansatz)
        alpha = window_alpha(cfg, ansatz)
        manifest["window_alpha"] = alpha

        csv_path = os.path.join(out_dir, "diagnostics.csv")
        recorder = Recorder(ansatz, g, alpha=alpha, csv_path=csv_path)
        manifest["files"]["diagnostics"] = csv_path

        snap0 = os.path.join(out_dir, "snapshot_initial.csv")
        write_snapshot(snap0, state, ansatz, g)
        manifest["files"]["snapshot_initial"] = snap0

        recorder.sample(state)
        for t in record_times(cfg["run.t_end"], cfg["run.n_records"])[1:]:
            advance(state, ansatz, g, solver_cfg, t)
            recorder.sample(state)
        recorder.close()

        snap1 = os.path.join(out_dir, "snapshot_final.csv")
        write_snapshot(snap1, state, ansatz, g)
        manifest["files"]["snapshot_final"] = snap1

        if isinstance(ansatz, CompositeAnsatz):
            ppath = os.path.join(out_dir, "profile.csv")
            ansatz.profile.save(ppath)
            manifest["files"]["profile"] = ppath

        manifest["steps"] = state.steps
        manifest["time_integrals"] = recorder.time_integrals()
        manifest["smallest_admissible_C"] = recorder.smallest_admissible_C()
        manifest["verdicts"] = _verdicts(cfg, recorder)
        return finish()
    except Exception as exc:
        if recorder is not None:
            recorder.close()
        manifest["verdicts"] = {"passes": False}
        finish(error=f"{type(exc).__name__}: {exc}")
        raise


def convergence_study(cfg: RunConfig, levels=3):
    """Grid-refinement orders for the manufactured (or quiescent) scenario."""
    if levels < 2:
        raise ValueError("need at least 2 levels")
    scenario = cfg["scenario"]
    if scenario not in ("manufactured", "quiescent"):
        raise NSWavesError(
            "convergence_study needs a smooth scenario "
            "(manufactured or quiescent), got %r" % scenario)
    g = cfg.gas()
    ansatz = make_ansatz(cfg)
    solver_cfg = _mms_forcing_config(cfg, ansatz)
    t_end = cfg["run.t_end"]
    ns, errors = [], {"v": [], "u": [], "theta": []}
    for k in range(levels):
        n = cfg["grid.n_cells"] * 2 ** k
        grid = make_grid(cfg["grid.x_min"], cfg["grid.x_max"], n)
        state = initialize(ansatz, grid, g)
        advance(state, ansatz, g, solver_cfg, t_end)
        V, _, Th = ansatz.eval(grid.centers, t_end)
        _, U, _ = ansatz.eval(grid.edges, t_end)
        ns.append(n)
        errors["v"].append(float(np.abs(state.v - V).max()))
        errors["u"].append(float(np.abs(state.u - U).max()))
        errors["theta"].append(float(np.abs(state.theta - Th).max()))
    exact = all(max(errors[f]) < 1e-12 for f in errors)
    orders = {}
    for f in errors:
        if exact:
            orders[f] = ["exact"] * (levels - 1)
        else:
            orders[f] = [math.log2(errors[f][i] / errors[f][i + 1])
                         for i in range(levels - 1)]
    report = {"scenario": scenario, "levels": ns, "errors": errors,
              "orders": orders, "exact": exact}
    if exact:
        report["passes"] = True
    else:
        flat = [o for f in orders for o in orders[f]]
        report["passes"] = bool(all(1.8 <= o <= 2.2 for o in flat))
    return report


_DOUBLING_FIELDS = ("E", "D", "W", "sup_phi", "sup_psi", "sup_zeta", "h1")


def domain_doubling_check(cfg: RunConfig, rel_tol=1e-4):
    """Compare t_end diagnostics against a domain-doubled rerun.

    The doubled run keeps dx fixed (twice the cells on twice the domain),
    so any difference measures boundary truncation, not resolution.
    """
    diag = {}
    for tag, factor in (("base", 1), ("doubled", 2)):
        g = cfg.gas()
        ansatz = make_ansatz(cfg)
        grid = make_grid(factor * cfg["grid.x_min"],
                         factor * cfg["grid.x_max"],
                         factor * cfg["grid.n_cells"])
        pert = make_perturbation(cfg, ansatz)
        state = initialize(ansatz, grid, g, perturbation=pert)
        solver_cfg = _mms_forcing_config(cfg, ansatz)
        recorder = Recorder(ansatz, g, alpha=window_alpha(cfg, ansatz))
        recorder.sample(state)
        advance(state, ansatz, g, solver_cfg, cfg["run.t_end"])
        diag[tag] = recorder.sample(state)

    rels = {}
    for f in _DOUBLING_FIELDS:
        a = getattr(diag["base"], f)
        b = getattr(diag["doubled"], f)
        scale = max(abs(a), abs(b), 1e-300)
        rels[f] = abs(a - b) / scale
    worst = max(rels.values())
    return {
        "rel_diffs": rels,
        "max_rel_diff": worst,
        "rel_tol": rel_tol,
        "passes": bool(worst < rel_tol),
    }
