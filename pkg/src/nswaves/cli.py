"""Command-line front end.

Subcommands:
    simulate --config <path> [--out <dir>]   run a scenario, write artifacts
    riemann --left v,u,theta --right v,u,theta [gas options]
    profile contact --theta-minus <r> --theta-plus <r> --p-plus <r>
            --out <path> [gas/profile options]
    verify --config <path> [--out <dir>]      run and judge against thresholds
    converge --config <path> [--levels <n>]   grid-refinement study

Exit codes: 0 on pass, 1 on verdict failure, 2 on error (including usage).
Default output directories live under $NSWAVES_OUTDIR (or ./runs) named
after the config file stem.
"""

import argparse
import os
import sys

from .config import load_config
from .contact import solve_contact_profile
from .errors import NSWavesError
from .gas import GasParams, ThermoState
from .riemann import same_order_check, solve_wave_pattern
from .scenario import convergence_study, run_scenario


def _fmt(x):
    return "%.17g" % x


def _out_dir(args, cfg_path):
    if getattr(args, "out", None):
        return args.out
    root = os.environ.get("NSWAVES_OUTDIR", "runs")
    stem = os.path.splitext(os.path.basename(cfg_path))[0]
    return os.path.join(root, stem)


def _parse_state(text, label):
    parts = text.split(",")
    if len(parts) != 3:
        raise NSWavesError(f"--{label} needs 'v,u,theta', got {text!r}")
    try:
        v, u, theta = (float(p) for p in parts)
    except ValueError:
        raise NSWavesError(f"--{label}: non-numeric component in {text!r}") \
            from None
    return ThermoState(v, u, theta)


def _gas_from_args(args):
    return GasParams(R=args.R, gamma=args.gamma,
                     A=None if args.A == 0.0 else args.A,
                     mu_tilde=args.mu_tilde, kappa_tilde=args.kappa_tilde,
                     alpha=args.alpha, beta=args.beta)


def _add_gas_options(p):
    p.add_argument("--R", type=float, default=1.0)
    p.add_argument("--gamma", type=float, default=5.0 / 3.0)
    p.add_argument("--A", type=float, default=0.0,
                   help="entropy gauge; 0 means use R")
    p.add_argument("--mu-tilde", dest="mu_tilde", type=float, default=1.0)
    p.add_argument("--kappa-tilde", dest="kappa_tilde", type=float,
                   default=1.0)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=1.0)


def _cmd_simulate(args):
    cfg = load_config(args.config)
    out = _out_dir(args, args.config)
    manifest = run_scenario(cfg, out)
    verdicts = manifest.get("verdicts", {})
    print(f"scenario: {manifest['scenario']}")
    print(f"output:   {out}")
    for key in sorted(verdicts):
        val = verdicts[key]
        if isinstance(val, float):
            val = _fmt(val)
        print(f"  {key} = {val}")
    return 0 if verdicts.get("passes") else 1


def _cmd_riemann(args):
    g = _gas_from_args(args)
    left = _parse_state(args.left, "left")
    right = _parse_state(args.right, "right")
    dec = solve_wave_pattern(left, right, g)
    d1, dcd, d3 = dec.strengths
    print("delta_r1 =", _fmt(d1))
    print("delta_cd =", _fmt(dcd))
    print("delta_r3 =", _fmt(d3))
    print("p_mid    =", _fmt(dec.p_mid))
    print("u_mid    =", _fmt(dec.u_mid))
    for name, st in (("left_mid", dec.left_mid), ("right_mid",
                                                  dec.right_mid)):
        print(f"{name} = {_fmt(st.v)},{_fmt(st.u)},{_fmt(st.theta)}")
    same = same_order_check(dec, args.C)
    verdict = "degenerate" if same.degenerate else same.same_order
    print("same_order(C=%g) =" % args.C, verdict)
    return 0


def _cmd_profile(args):
    if args.kind != "contact":
        raise NSWavesError(f"unknown profile kind {args.kind!r}")
    g = _gas_from_args(args)
    prof = solve_contact_profile(args.theta_minus, args.theta_plus,
                                 args.p_plus, g, L_xi=args.L_xi,
                                 n_nodes=args.n_nodes, tol=args.tol)
    prof.save(args.out)
    print("wrote", args.out)
    print("a_bar    =", _fmt(prof.a_bar))
    print("decay_c1 =", _fmt(prof.decay_c1))
    print("residual =", _fmt(prof.ode_residual()))
    return 0


def _cmd_verify(args):
    cfg = load_config(args.config)
    out = _out_dir(args, args.config)
    manifest = run_scenario(cfg, out)
    verdicts = manifest.get("verdicts", {})
    checks = [k for k in ("positivity_ok", "decay_ok", "energy_ok",
                          "dissipation_ok") if k in verdicts]
    for key in checks:
        print(f"{'PASS' if verdicts[key] else 'FAIL'}  {key}")
    ok = bool(verdicts.get("passes"))
    print(f"{'PASS' if ok else 'FAIL'}  overall ({args.config})")
    return 0 if ok else 1


def _cmd_converge(args):
    cfg = load_config(args.config)
    report = convergence_study(cfg, levels=args.levels)
    print("levels:", report["levels"])
    for f in ("v", "u", "theta"):
        errs = " ".join(_fmt(e) for e in report["errors"][f])
        print(f"errors[{f}]: {errs}")
        print(f"orders[{f}]: {report['orders'][f]}")
    if report["exact"]:
        print("errors at machine noise; order report flagged 'exact'")
    print("PASS" if report["passes"] else "FAIL")
    return 0 if report["passes"] else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="nswaves", description=__doc__,
                                 formatter_class=argparse
                                 .RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a configured scenario")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("riemann", help="decompose two end states")
    p.add_argument("--left", required=True, metavar="v,u,theta")
    p.add_argument("--right", required=True, metavar="v,u,theta")
    p.add_argument("--C", type=float, default=10.0,
                   help="same-order constant")
    _add_gas_options(p)
    p.set_defaults(func=_cmd_riemann)

    p = sub.add_parser("profile", help="construct and save a wave profile")
    p.add_argument("kind", choices=["contact"])
    p.add_argument("--theta-minus", dest="theta_minus", type=float,
                   required=True)
    p.add_argument("--theta-plus", dest="theta_plus", type=float,
                   required=True)
    p.add_argument("--p-plus", dest="p_plus", type=float, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--L-xi", dest="L_xi", type=float, default=20.0)
    p.add_argument("--n-nodes", dest="n_nodes", type=int, default=4001)
    p.add_argument("--tol", type=float, default=1e-10)
    _add_gas_options(p)
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("verify", help="run a config and judge thresholds")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("converge", help="grid refinement study")
    p.add_argument("--config", required=True)
    p.add_argument("--levels", type=int, default=3)
    p.set_defaults(func=_cmd_converge)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except NSWavesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
