"""Flat dotted-key run configuration.

Files are plain text, one `key = value` per line; blank lines and lines
starting with `#` are ignored, as is anything after an inline ` #`.
Unknown keys are rejected.  The full schema with defaults:

    gas.R                    float  1.0    ideal gas constant
    gas.gamma                float  5/3    adiabatic exponent (> 1)
    gas.A                    float  0.0    entropy gauge; 0 means "use R"
    gas.mu_tilde             float  1.0    viscosity prefactor
    gas.kappa_tilde          float  1.0    conductivity prefactor
    gas.alpha                float  0.0    viscosity exponent
    gas.beta                 float  1.0    conductivity exponent (> 0)
    left.v/.u/.theta         float         left far-field state
    right.v/.u/.theta        float         right far-field state
    scenario                 str    contact-only
        one of: contact-only | composite | quiescent | manufactured
    perturbation.kind        str    none   none | gaussian | file
    perturbation.amplitude   float  0.0
    perturbation.width       float  1.0    full width at half maximum
    perturbation.center      float  0.0
    perturbation.path        str    ""     CSV x,phi,psi,zeta (kind=file)
    grid.x_min/.x_max        float         domain in Lagrangian mass coord
    grid.n_cells             int    1000
    solver.cfl               float  0.4
    solver.diff_safety       float  0.4
    solver.max_steps         int    50000000
    profile.L_xi             float  20.0   half-width of the xi grid
    profile.n_nodes          int    4001
    profile.tol              float  1e-10
    run.t_end                float  10.0
    run.n_records            int    33     diagnostic samples, geometric in 1+t
    thresholds.decay_factor  float  5.0    required sup-norm decrease
    thresholds.energy_kappa  float  2.0    E(t) <= kappa E(0) + c
    thresholds.energy_c      float  1e-6
    thresholds.tail_fraction float  0.2    final-decade share of int D dt
    window.alpha             float  0.0    0 means fitted decay_c1/4
    seed_label               str    ""     free-form run identifier
"""

import math
import os

from .errors import ParseError, ValidationError
from .gas import GasParams, ThermoState, pressure
from .solver import SolverConfig

SCENARIOS = ("contact-only", "composite", "quiescent", "manufactured")
PERTURBATION_KINDS = ("none", "gaussian", "file")

# key -> (type, default); insertion order is the canonical file order
SCHEMA = {
    "gas.R": (float, 1.0),
    "gas.gamma": (float, 5.0 / 3.0),
    "gas.A": (float, 0.0),
    "gas.mu_tilde": (float, 1.0),
    "gas.kappa_tilde": (float, 1.0),
    "gas.alpha": (float, 0.0),
    "gas.beta": (float, 1.0),
    "left.v": (float, 1.0),
    "left.u": (float, 0.0),
    "left.theta": (float, 1.0),
    "right.v": (float, 1.0),
    "right.u": (float, 0.0),
    "right.theta": (float, 1.0),
    "scenario": (str, "contact-only"),
    "perturbation.kind": (str, "none"),
    "perturbation.amplitude": (float, 0.0),
    "perturbation.width": (float, 1.0),
    "perturbation.center": (float, 0.0),
    "perturbation.path": (str, ""),
    "grid.x_min": (float, -50.0),
    "grid.x_max": (float, 50.0),
    "grid.n_cells": (int, 1000),
    "solver.cfl": (float, 0.4),
    "solver.diff_safety": (float, 0.4),
    "solver.max_steps": (int, 50_000_000),
    "profile.L_xi": (float, 20.0),
    "profile.n_nodes": (int, 4001),
    "profile.tol": (float, 1e-10),
    "run.t_end": (float, 10.0),
    "run.n_records": (int, 33),
    "thresholds.decay_factor": (float, 5.0),
    "thresholds.energy_kappa": (float, 2.0),
    "thresholds.energy_c": (float, 1e-6),
    "thresholds.tail_fraction": (float, 0.2),
    "window.alpha": (float, 0.0),
    "seed_label": (str, ""),
}


class RunConfig:
    """Validated key/value store over SCHEMA with typed accessors.

    base_dir records where the config was loaded from so that relative
    file references (perturbation.path) resolve against the config, not
    the caller's working directory.
    """

    def __init__(self, values, base_dir=""):
        self.values = values
        self.base_dir = base_dir

    def __getitem__(self, key):
        return self.values[key]

    def __eq__(self, other):
        return isinstance(other, RunConfig) and self.values == other.values

    def resolve_path(self, path):
        if os.path.isabs(path) or not self.base_dir:
            return path
        return os.path.join(self.base_dir, path)

    def gas(self) -> GasParams:
        A = self["gas.A"]
        return GasParams(R=self["gas.R"], gamma=self["gas.gamma"],
                         A=None if A == 0.0 else A,
                         mu_tilde=self["gas.mu_tilde"],
                         kappa_tilde=self["gas.kappa_tilde"],
                         alpha=self["gas.alpha"], beta=self["gas.beta"])

    def left(self) -> ThermoState:
        return ThermoState(self["left.v"], self["left.u"], self["left.theta"])

    def right(self) -> ThermoState:
        return ThermoState(self["right.v"], self["right.u"],
                           self["right.theta"])

    def solver_config(self) -> SolverConfig:
        return SolverConfig(cfl=self["solver.cfl"],
                            diff_safety=self["solver.diff_safety"],
                            max_steps=self["solver.max_steps"])

    def thresholds(self):
        return {
            "decay_factor": self["thresholds.decay_factor"],
            "energy_kappa": self["thresholds.energy_kappa"],
            "energy_c": self["thresholds.energy_c"],
            "tail_fraction": self["thresholds.tail_fraction"],
        }


def _format_value(v):
    if isinstance(v, bool):
        raise TypeError("booleans are not part of the schema")
    if isinstance(v, int):
        return "%d" % v
    if isinstance(v, float):
        return "%.17g" % v
    return str(v)


def serialize_config(cfg: RunConfig) -> str:
    lines = [f"{key} = {_format_value(cfg.values[key])}" for key in SCHEMA]
    return "\n".join(lines) + "\n"


def save_config(cfg: RunConfig, path):
    with open(path, "w") as fh:
        fh.write(serialize_config(cfg))


def parse_config(text, source="<string>") -> RunConfig:
    values = {key: default for key, (_, default) in SCHEMA.items()}
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"{source}:{lineno}: expected 'key = value', "
                             f"got {raw.strip()!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.strip()
        if key not in SCHEMA:
            raise ValidationError(f"{source}:{lineno}: unknown key {key!r}")
        if key in seen:
            raise ParseError(f"{source}:{lineno}: duplicate key {key!r}")
        seen.add(key)
        typ = SCHEMA[key][0]
        if typ is str:
            values[key] = val
        else:
            try:
                values[key] = typ(val)
            except ValueError:
                raise ParseError(
                    f"{source}:{lineno}: cannot parse {val!r} as "
                    f"{typ.__name__} for key {key!r}") from None
    cfg = RunConfig(values)
    validate_config(cfg)
    return cfg


def load_config(path) -> RunConfig:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read config {path}: {exc}") from None
    cfg = parse_config(text, source=str(path))
    cfg.base_dir = os.path.dirname(os.path.abspath(path))
    return cfg


def validate_config(cfg: RunConfig):
    def bad(msg):
        raise ValidationError(msg)

    v = cfg.values
    if v["scenario"] not in SCENARIOS:
        bad(f"scenario must be one of {SCENARIOS}, got {v['scenario']!r}")
    if v["perturbation.kind"] not in PERTURBATION_KINDS:
        bad(f"perturbation.kind must be one of {PERTURBATION_KINDS}, "
            f"got {v['perturbation.kind']!r}")
    try:
        g = cfg.gas()
        left = cfg.left()
        right = cfg.right()
    except ValueError as exc:
        bad(str(exc))
    if not v["grid.x_min"] < v["grid.x_max"]:
        bad("grid.x_min must be below grid.x_max")
    if v["grid.n_cells"] < 4:
        bad("grid.n_cells must be at least 4")
    for key in ("solver.cfl", "solver.diff_safety", "profile.L_xi",
                "profile.tol", "thresholds.decay_factor",
                "thresholds.energy_kappa"):
        if not v[key] > 0.0:
            bad(f"{key} must be positive")
    for key in ("thresholds.energy_c", "window.alpha", "run.t_end",
                "perturbation.width"):
        if v[key] < 0.0:
            bad(f"{key} must be nonnegative")
    if not 0.0 < v["thresholds.tail_fraction"] <= 1.0:
        bad("thresholds.tail_fraction must lie in (0, 1]")
    if v["solver.max_steps"] < 1 or v["profile.n_nodes"] < 11:
        bad("solver.max_steps must be >= 1 and profile.n_nodes >= 11")
    if v["run.n_records"] < 2:
        bad("run.n_records must be at least 2")

    if v["scenario"] == "contact-only":
        du = abs(left.u - right.u)
        dp = abs(pressure(left, g) - pressure(right, g))
        if du > 1e-8 or dp > 1e-8:
            bad("contact-only requires matched velocity and pressure "
                "(|du| = %.3g, |dp| = %.3g exceed 1e-8)" % (du, dp))
    if v["scenario"] == "quiescent":
        if (abs(left.v - right.v) > 1e-12 or abs(left.u - right.u) > 1e-12
                or abs(left.theta - right.theta) > 1e-12):
            bad("quiescent requires identical end states")
    if v["perturbation.kind"] == "gaussian" and not v["perturbation.width"] > 0:
        bad("gaussian perturbation needs a positive width")
    if v["perturbation.kind"] == "file" and not v["perturbation.path"]:
        bad("file perturbation needs perturbation.path")
    for key in ("run.t_end", "profile.tol"):
        if not math.isfinite(v[key]):
            bad(f"{key} must be finite")
