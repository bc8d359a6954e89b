"""End-to-end stability run: perturbed contact wave through the harness.

Parses an inline config, runs the full scenario pipeline (ansatz build,
perturbed initialization, explicit march, CSV diagnostics, manifest with
verdicts), then walks through the recorded trajectory.  A scaled-down
cousin of the long acceptance runs so it finishes in seconds.

Run:  python3 demos/05_stability_run.py
"""

import csv
import json
import os
import tempfile

from nswaves import parse_config, run_scenario

CONFIG = """
gas.kappa_tilde = 5
gas.mu_tilde = 2
gas.beta = 0.5

left.v = 1
left.u = 0
left.theta = 1
right.v = 1.1
right.u = 0
right.theta = 1.1
scenario = contact-only

perturbation.kind = gaussian
perturbation.amplitude = 0.1
perturbation.width = 3
perturbation.center = 0

grid.x_min = -40
grid.x_max = 40
grid.n_cells = 600
profile.L_xi = 14
profile.n_nodes = 2001

run.t_end = 30
run.n_records = 17
seed_label = demo-contact
"""

cfg = parse_config(CONFIG, source="demo05")
out_dir = os.path.join(tempfile.mkdtemp(prefix="nswaves-demo-"), "run")
print(f"running contact scenario to t = {cfg['run.t_end']:g} "
      f"({cfg['grid.n_cells']} cells) ...")
manifest = run_scenario(cfg, out_dir)
print(f"finished in {manifest['wall_seconds']:.1f} s, "
      f"{manifest['steps']} steps; artifacts in {out_dir}")

print()
print("trajectory (from diagnostics.csv):")
print(f"  {'t':>8s} {'E':>11s} {'D':>11s} {'sup_phi':>10s} "
      f"{'sup_zeta':>10s} {'min_theta':>10s}")
with open(os.path.join(out_dir, "diagnostics.csv")) as fh:
    for row in csv.DictReader(fh):
        t = float(row["t"])
        if t not in (0.0, 1.0) and t < 3.0:
            continue
        print(f"  {t:8.2f} {float(row['E']):11.4e} {float(row['D']):11.4e} "
              f"{float(row['sup_phi']):10.4f} {float(row['sup_zeta']):10.4f} "
              f"{float(row['min_theta']):10.6f}")

v = manifest["verdicts"]
print()
print("verdicts (thresholds from the config):")
print(f"  positivity_ok   = {v['positivity_ok']}   (v, theta stay positive)")
print(f"  decay_ok        = {v['decay_ok']}   "
      f"(sup shrank {1.0 / v['decay_factor']:.1f}x, need >= "
      f"{v['thresholds']['decay_factor']:g}x)")
print(f"  energy_ok       = {v['energy_ok']}   (E_max = {v['energy_max']:.3e}"
      f" <= {v['energy_bound']:.3e})")
print(f"  dissipation_ok  = {v['dissipation_ok']}   (final-decade share "
      f"{v['tail_fraction']:.3f} < {v['thresholds']['tail_fraction']:g})")
print(f"  passes          = {v['passes']}")

print()
print("the dissipation check is a long-horizon statement: at t_end = 30 the")
print("bump is still actively dissipating, so the final decade [3, 30] holds")
print(f"{v['tail_fraction']:.0%} of the accumulated D.  The shipped "
      "acceptance configs integrate to t = 200,")
print("where the share falls under the 20% threshold and all four checks "
      "pass.")

with open(os.path.join(out_dir, "manifest.json")) as fh:
    disk = json.load(fh)
print()
print(f"manifest.json carries the config echo, integrals "
      f"{sorted(disk['time_integrals'])} and smallest admissible "
      f"C = {disk['smallest_admissible_C']:.4f} for the window estimate.")
