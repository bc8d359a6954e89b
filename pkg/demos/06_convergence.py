"""Solver verification: manufactured-solution convergence and exact cases.

The staggered scheme is formally second order in space (first order in
time, but the diffusive dt ~ h^2 restriction makes the observed order 2).
A trigonometric manufactured solution with analytic forcing pins the
order; a quiescent run must be preserved to rounding.

Run:  python3 demos/06_convergence.py
"""

from nswaves import convergence_study, load_config

print("manufactured solution, three grid levels:")
cfg = load_config("configs/manufactured.cfg")
rep = convergence_study(cfg, levels=3)
print(f"  cells:  {rep['levels']}")
for field in ("v", "u", "theta"):
    errs = "  ".join(f"{e:.3e}" for e in rep["errors"][field])
    orders = "  ".join(f"{o:.3f}" for o in rep["orders"][field])
    print(f"  {field:5s}: max errors  {errs}   orders  {orders}")
print(f"  passes (all orders in [1.8, 2.2]): {rep['passes']}")

print()
print("quiescent state, two levels (must be preserved exactly):")
cfg = load_config("configs/quiescent.cfg")
rep = convergence_study(cfg, levels=2)
print(f"  max errors: v {max(rep['errors']['v']):.2e}, "
      f"u {max(rep['errors']['u']):.2e}, "
      f"theta {max(rep['errors']['theta']):.2e}")
print(f"  exact = {rep['exact']}, passes = {rep['passes']}")
