"""Numerical laboratory for viscous contact / rarefaction wave patterns in
one-dimensional compressible Navier-Stokes flow (Lagrangian coordinates)
with temperature-degenerate heat conduction."""

__version__ = "0.1.0"

from .gas import GasParams, ThermoState, pressure, entropy, theta_from_entropy, \
    transport, lambda_pm, phi_entropy
from .riemann import WaveDecomposition, SameOrderResult, rarefaction_curve, \
    solve_wave_pattern, same_order_check
from .contact import ContactProfile, solve_contact_profile, contact_wave_eval, \
    contact_derivs, contact_residuals, a_bar_coefficient, velocity_coefficient
from .rarefaction import RarefactionLeg, burgers_eval, burgers_derivs, \
    build_rarefaction_leg, rarefaction_eval, rarefaction_derivs
from .composite import CompositeAnsatz, build_composite
from .solver import Grid1D, SolverConfig, SimulationState, make_grid, \
    initialize, stable_dt, step, advance
from .mms import ManufacturedSolution
from .diagnostics import PerturbationField, DiagnosticsRecord, Recorder, \
    perturbation, basic_energy, dissipation, window_norm, window_weight, \
    window_l2_squared, grad_l2_squared, h1_norm, cell_average_bounds, \
    entropy_gauge_roots, decay_report, write_snapshot, CSV_HEADER
from .config import RunConfig, load_config, parse_config, save_config, \
    serialize_config, validate_config, SCHEMA
from .scenario import GaussianPerturbation, FilePerturbation, make_ansatz, \
    make_perturbation, run_scenario, convergence_study, domain_doubling_check, \
    window_alpha, record_times
from . import errors

__all__ = [
    "GasParams", "ThermoState", "pressure", "entropy", "theta_from_entropy",
    "transport", "lambda_pm", "phi_entropy",
    "WaveDecomposition", "SameOrderResult", "rarefaction_curve",
    "solve_wave_pattern", "same_order_check",
    "ContactProfile", "solve_contact_profile", "contact_wave_eval",
    "contact_derivs", "contact_residuals", "a_bar_coefficient",
    "velocity_coefficient",
    "RarefactionLeg", "burgers_eval", "burgers_derivs",
    "build_rarefaction_leg", "rarefaction_eval", "rarefaction_derivs",
    "CompositeAnsatz", "build_composite",
    "Grid1D", "SolverConfig", "SimulationState", "make_grid", "initialize",
    "stable_dt", "step", "advance",
    "ManufacturedSolution",
    "PerturbationField", "DiagnosticsRecord", "Recorder", "perturbation",
    "basic_energy", "dissipation", "window_norm", "window_weight",
    "window_l2_squared", "grad_l2_squared", "h1_norm", "cell_average_bounds",
    "entropy_gauge_roots", "decay_report", "write_snapshot", "CSV_HEADER",
    "RunConfig", "load_config", "parse_config", "save_config",
    "serialize_config", "validate_config", "SCHEMA",
    "GaussianPerturbation", "FilePerturbation", "make_ansatz",
    "make_perturbation", "run_scenario", "convergence_study",
    "domain_doubling_check", "window_alpha", "record_times",
    "errors",
]
