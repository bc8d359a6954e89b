"""Generate the manufactured-solution forcing terms with sympy.

Run offline; the printed expressions are pasted into nswaves/mms.py so the
package itself does not depend on sympy.  The manufactured pair is chosen
so the mass equation holds exactly (v_t = u_x with no forcing):

    v = 1 + av*sin(k*x)*cos(om*t)
    u = (av*om/k)*cos(k*x)*sin(om*t)
    theta = th0 + ath*cos(k*x)*cos(om*t)
"""

import sympy as sp


def main():
    x, t = sp.symbols("x t")
    R, gam, mu, kap, beta = sp.symbols("R gam mu kap beta", positive=True)
    av, ath, k, om, th0 = sp.symbols("av ath k om th0", positive=True)

    v = 1 + av * sp.sin(k * x) * sp.cos(om * t)
    u = (av * om / k) * sp.cos(k * x) * sp.sin(om * t)
    th = th0 + ath * sp.cos(k * x) * sp.cos(om * t)

    assert sp.simplify(sp.diff(v, t) - sp.diff(u, x)) == 0

    p = R * th / v
    c_nu = R / (gam - 1)

    f_mom = sp.diff(u, t) + sp.diff(p, x) \
        - mu * sp.diff(sp.diff(u, x) / v, x)
    f_en = c_nu * sp.diff(th, t) + p * sp.diff(u, x) \
        - kap * sp.diff(th ** beta * sp.diff(th, x) / v, x) \
        - mu * sp.diff(u, x) ** 2 / v

    subs = {}
    for name, expr in (("f_mom", f_mom), ("f_en", f_en)):
        expr = sp.simplify(expr)
        code = sp.printing.pycode(expr)
        print("#", name)
        print(code)
        print()


if __name__ == "__main__":
    main()
