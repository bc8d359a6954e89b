"""Decompose a pair of end states into rarefaction-contact-rarefaction.

For end states that connect through the expansive pattern, the decomposer
returns the two middle states (equal pressure and velocity, different
temperature), the three wave strengths, and a comparability verdict:
the stability theory wants all three strengths within a common factor C
of each other.

Run:  python3 demos/02_riemann.py
"""

from nswaves import GasParams, ThermoState, same_order_check, \
    solve_wave_pattern

g = GasParams(R=1.0, gamma=5.0 / 3.0)


def show(left, right, label):
    print(label)
    print(f"  left  = ({left.v}, {left.u}, {left.theta})")
    print(f"  right = ({right.v}, {right.u}, {right.theta})")
    dec = solve_wave_pattern(left, right, g)
    d1, dcd, d3 = dec.strengths
    print(f"  p_mid = {dec.p_mid:.12f}, u_mid = {dec.u_mid:.12f}")
    print(f"  strengths: r1 = {d1:.6f}, cd = {dcd:.6f}, r3 = {d3:.6f}")
    same = same_order_check(dec, 10.0)
    verdict = "degenerate" if same.degenerate else same.same_order
    print(f"  same order (C = 10): {verdict}")
    print()


# contact-compatible: equal pressure and velocity, so both fans vanish
show(ThermoState(1.0, 0.0, 1.0), ThermoState(2.0, 0.0, 2.0),
     "contact-compatible pair (p and u match):")

# diverging velocities open both fans
show(ThermoState(1.0, -0.05, 1.0), ThermoState(1.0, 0.05, 1.1),
     "generic expansive pair:")

# the composite acceptance states: three strengths of exactly 0.05
show(ThermoState(0.98323127452036714, -0.021893542592950937,
                 1.0113377319274157),
     ThermoState(1.0330472965495245, 0.021591218763919208,
                 1.061456077785605),
     "balanced three-wave pair (strengths 0.05 each):")
