"""Self-similar viscous contact profile.

The temperature profile Theta(xi), xi = x/sqrt(1+t), solves the degenerate
nonlinear diffusion two-point problem

    a_bar * (Theta**(beta-1) * Theta')' + (xi/2) * Theta' = 0,
    Theta(-L) = theta_minus,  Theta(+L) = theta_plus,

with a_bar = kappa_tilde*(gamma-1)*p_plus / (gamma*R**2).  Volume and
velocity follow algebraically at constant pressure p_plus:

    V = R*Theta/p_plus,
    U = u_shift + c_U * Theta**(beta-1) * Theta_x,   c_U = kappa_tilde*(gamma-1)/(gamma*R),

which satisfies V_t = U_x identically.  The momentum and energy equations
are then satisfied up to residuals decaying like (1+t)**-1.5 and (1+t)**-2.

The discretization keeps the flux in the form
    m = ((Theta_i + Theta_{i+1})/2)**(beta-1) * (Theta_{i+1} - Theta_i)/h
so that beta close to 0 incurs no cancellation.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.linalg import solve_banded

from .errors import DomainTooSmall, NoConvergence
from .gas import GasParams

__all__ = ["ContactProfile", "solve_contact_profile", "contact_wave_eval",
           "contact_derivs", "contact_residuals", "a_bar_coefficient",
           "velocity_coefficient"]


def a_bar_coefficient(p_plus, g: GasParams):
    """Diffusion coefficient of the reduced temperature equation."""
    return g.kappa_tilde * (g.gamma - 1.0) * p_plus / (g.gamma * g.R ** 2)


def velocity_coefficient(g: GasParams):
    return g.kappa_tilde * (g.gamma - 1.0) / (g.gamma * g.R)


def _as_array(x):
    a = np.atleast_1d(np.asarray(x, dtype=float))
    return a, np.isscalar(x) or (np.asarray(x).ndim == 0)


@dataclass
class ContactProfile:
    """Solved similarity profile plus evaluation helpers.

    xi, theta, dtheta are node arrays on [-L, L].  decay_c1 is the fitted
    Gaussian tail rate: |Theta - theta_end| ~ exp(-decay_c1 * xi**2).
    """

    xi: np.ndarray
    theta: np.ndarray
    dtheta: np.ndarray
    theta_minus: float
    theta_plus: float
    p_plus: float
    a_bar: float
    beta: float
    decay_c1: float

    @cached_property
    def _spl(self):
        return CubicSpline(self.xi, self.theta)

    def _eval(self, pts, deriv):
        pts_a, scalar = _as_array(pts)
        out = np.empty_like(pts_a)
        lo = pts_a < self.xi[0]
        hi = pts_a > self.xi[-1]
        mid = ~(lo | hi)
        if deriv == 0:
            out[lo] = self.theta[0]
            out[hi] = self.theta[-1]
            out[mid] = self._spl(pts_a[mid])
        else:
            out[lo] = 0.0
            out[hi] = 0.0
            out[mid] = self._spl(pts_a[mid], 1)
        return out[0] if scalar else out

    def theta_at(self, pts):
        return self._eval(pts, 0)

    def dtheta_at(self, pts):
        return self._eval(pts, 1)

    def d2theta_at(self, pts):
        # second derivative from the profile equation itself, which is far
        # more accurate than differentiating the interpolant twice
        pts_a, scalar = _as_array(pts)
        th = self.theta_at(pts_a)
        dth = self.dtheta_at(pts_a)
        out = -(pts_a / (2.0 * self.a_bar)) * th ** (1.0 - self.beta) * dth \
            - (self.beta - 1.0) * dth ** 2 / th
        return out[0] if scalar else out

    def d3theta_at(self, pts):
        pts_a, scalar = _as_array(pts)
        th = self.theta_at(pts_a)
        d1 = self.dtheta_at(pts_a)
        d2 = self.d2theta_at(pts_a)
        b = self.beta
        out = -(1.0 / (2.0 * self.a_bar)) * (
            th ** (1.0 - b) * d1
            + pts_a * (1.0 - b) * th ** (-b) * d1 ** 2
            + pts_a * th ** (1.0 - b) * d2) \
            - (b - 1.0) * (2.0 * d1 * d2 / th - d1 ** 3 / th ** 2)
        return out[0] if scalar else out

    def ode_residual(self):
        """Max abs of the discrete flux-form equation on the stored nodes."""
        h = self.xi[1] - self.xi[0]
        r = _interior_residual(self.theta, self.xi, h, self.a_bar, self.beta)
        return float(np.abs(r).max())

    def save(self, path):
        with open(path, "w") as f:
            f.write("# contact profile\n")
            for k in ("theta_minus", "theta_plus", "p_plus", "a_bar",
                      "beta", "decay_c1"):
                f.write("# %s = %.17g\n" % (k, getattr(self, k)))
            f.write("# columns: xi theta dtheta\n")
            for x, th, dth in zip(self.xi, self.theta, self.dtheta):
                f.write("%.17g %.17g %.17g\n" % (x, th, dth))

    @classmethod
    def load(cls, path):
        params = {}
        with open(path) as f:
            lines = f.readlines()
        rows = []
        for ln in lines:
            ln = ln.strip()
            if not ln:
                continue
            if ln.startswith("#"):
                body = ln[1:].strip()
                if "=" in body:
                    k, _, v = body.partition("=")
                    params[k.strip()] = float(v)
                continue
            rows.append([float(tok) for tok in ln.split()])
        arr = np.array(rows)
        return cls(xi=arr[:, 0], theta=arr[:, 1], dtheta=arr[:, 2],
                   theta_minus=params["theta_minus"],
                   theta_plus=params["theta_plus"],
                   p_plus=params["p_plus"], a_bar=params["a_bar"],
                   beta=params["beta"], decay_c1=params["decay_c1"])


def _face_flux(theta, h, beta):
    avg = 0.5 * (theta[1:] + theta[:-1])
    return avg ** (beta - 1.0) * np.diff(theta) / h


def _interior_residual(theta, xi, h, a_bar, beta):
    m = _face_flux(theta, h, beta)
    return a_bar * np.diff(m) / h \
        + xi[1:-1] * (theta[2:] - theta[:-2]) / (4.0 * h)


def _newton_tridiag(theta, xi, h, a_bar, beta, tol, max_iter):
    n = theta.size
    for _ in range(max_iter):
        r = _interior_residual(theta, xi, h, a_bar, beta)
        rmax = np.abs(r).max()
        if rmax <= tol:
            return theta
        # face-local derivative pieces of m = avg**(beta-1) * diff/h
        avg = 0.5 * (theta[1:] + theta[:-1])
        diff = np.diff(theta) / h
        A = 0.5 * (beta - 1.0) * avg ** (beta - 2.0) * diff
        B = avg ** (beta - 1.0) / h
        c = a_bar / h
        # interior unknowns i = 1..n-2; residual r_i couples faces i-1, i
        sub = -c * (A[:-1] - B[:-1]) - xi[1:-1] / (4.0 * h)   # d r_i / d theta_{i-1}
        dia = c * ((A[1:] - B[1:]) - (A[:-1] + B[:-1]))       # d r_i / d theta_i
        sup = c * (A[1:] + B[1:]) + xi[1:-1] / (4.0 * h)      # d r_i / d theta_{i+1}
        m_int = n - 2
        ab = np.zeros((3, m_int))
        ab[0, 1:] = sup[:-1]
        ab[1, :] = dia
        ab[2, :-1] = sub[1:]
        delta = solve_banded((1, 1), ab, -r)
        lam = 1.0
        while True:
            trial = theta.copy()
            trial[1:-1] += lam * delta
            if trial.min() > 0.0:
                r_try = np.abs(
                    _interior_residual(trial, xi, h, a_bar, beta)).max()
                if r_try <= (1.0 - 0.25 * lam) * rmax or r_try <= tol:
                    theta = trial
                    break
            lam *= 0.5
            if lam < 1e-12:
                raise NoConvergence(
                    "contact profile line search stalled at residual %.3e"
                    % rmax)
    raise NoConvergence("contact profile Newton did not reach tol=%g" % tol)


def _fit_tail_rate(xi, theta, theta_end, jump, side):
    """Least-squares slope of log|Theta - theta_end| against xi**2."""
    if side > 0:
        mask0 = xi > 0.5
    else:
        mask0 = xi < -0.5
    d = np.abs(theta - theta_end) / jump
    mask = mask0 & (d >= 1e-12) & (d <= 1e-3)
    if mask.sum() < 5:
        mask = mask0 & (d >= 1e-13) & (d <= 1e-2)
    if mask.sum() < 5:
        raise DomainTooSmall(
            "tail of the contact profile is not resolved on this domain")
    coef = np.polyfit(xi[mask] ** 2, np.log(d[mask]), 1)
    return -coef[0]


def solve_contact_profile(theta_minus, theta_plus, p_plus, g: GasParams, *,
                          L_xi=20.0, n_nodes=4001, tol=1e-10, max_iter=60):
    """Solve the similarity two-point problem by damped Newton iteration.

    Starts from a linear ramp; the Jacobian is tridiagonal.  Raises
    DomainTooSmall when the solution still has slope at the endpoints
    (more than 1e-6 of the peak slope) and NoConvergence when the
    iteration stalls.
    """
    if theta_minus <= 0.0 or theta_plus <= 0.0 or p_plus <= 0.0:
        raise ValueError("theta_minus, theta_plus, p_plus must be positive")
    if n_nodes < 9:
        raise ValueError("n_nodes too small")
    if L_xi <= 0.0:
        raise ValueError("L_xi must be positive")

    a_bar = a_bar_coefficient(p_plus, g)
    xi = np.linspace(-L_xi, L_xi, n_nodes)
    h = xi[1] - xi[0]
    theta = theta_minus + (theta_plus - theta_minus) * (xi + L_xi) / (2 * L_xi)

    jump = abs(theta_plus - theta_minus)
    if jump > 1e-14 * max(theta_minus, theta_plus):
        theta = _newton_tridiag(theta, xi, h, a_bar, g.beta, tol, max_iter)
        slopes = np.abs(theta[2:] - theta[:-2]) / (2.0 * h)
        edge = max(abs(theta[1] - theta[0]), abs(theta[-1] - theta[-2])) / h
        if edge > 1e-6 * slopes.max():
            raise DomainTooSmall(
                "profile slope at xi = +-%g is %.2e of the peak slope; "
                "increase L_xi" % (L_xi, edge / slopes.max()))
        c1 = min(_fit_tail_rate(xi, theta, theta_minus, jump, -1),
                 _fit_tail_rate(xi, theta, theta_plus, jump, +1))
    else:
        theta = np.full_like(xi, 0.5 * (theta_minus + theta_plus))
        c1 = 1.0  # constant profile, any Gaussian rate works; fixes alpha=1/4

    dtheta = CubicSpline(xi, theta)(xi, 1)
    return ContactProfile(xi=xi, theta=theta, dtheta=dtheta,
                          theta_minus=float(theta_minus),
                          theta_plus=float(theta_plus),
                          p_plus=float(p_plus), a_bar=a_bar,
                          beta=g.beta, decay_c1=float(c1))


def _check_gas(profile: ContactProfile, g: GasParams):
    a = a_bar_coefficient(profile.p_plus, g)
    if abs(a - profile.a_bar) > 1e-12 * profile.a_bar or g.beta != profile.beta:
        raise ValueError("gas parameters do not match the solved profile")


def contact_wave_eval(profile: ContactProfile, x, t, g: GasParams,
                      u_shift=0.0):
    """Evaluate (V, U, Theta) of the contact ansatz at positions x, time t."""
    _check_gas(profile, g)
    tau = 1.0 + t
    rt = np.sqrt(tau)
    xi = np.asarray(x, dtype=float) / rt
    th = profile.theta_at(xi)
    dth = profile.dtheta_at(xi)
    V = g.R * th / profile.p_plus
    cu = velocity_coefficient(g)
    U = u_shift + cu * th ** (profile.beta - 1.0) * dth / rt
    return V, U, th


def contact_derivs(profile: ContactProfile, x, t, g: GasParams,
                   u_shift=0.0):
    """Contact fields with x derivatives up to second order plus U_t.

    Same key layout as rarefaction_derivs so the composite can treat the
    three waves uniformly.  The contact pressure is the constant p_plus.
    """
    _check_gas(profile, g)
    tau = 1.0 + t
    rt = np.sqrt(tau)
    xi = np.asarray(x, dtype=float) / rt
    b = profile.beta
    th = profile.theta_at(xi)
    d1 = profile.dtheta_at(xi)
    d2 = profile.d2theta_at(xi)
    d3 = profile.d3theta_at(xi)
    cu = velocity_coefficient(g)

    q = cu * th ** (b - 1.0) * d1
    dq = cu * ((b - 1.0) * th ** (b - 2.0) * d1 ** 2 + th ** (b - 1.0) * d2)
    d2q = cu * ((b - 1.0) * (b - 2.0) * th ** (b - 3.0) * d1 ** 3
                + 3.0 * (b - 1.0) * th ** (b - 2.0) * d1 * d2
                + th ** (b - 1.0) * d3)

    rp = g.R / profile.p_plus
    out = {
        "V": rp * th, "U": u_shift + q / rt, "Theta": th,
        "P": np.full_like(th, profile.p_plus),
        "V_x": rp * d1 / rt, "U_x": dq / tau, "Theta_x": d1 / rt,
        "P_x": np.zeros_like(th),
        "V_xx": rp * d2 / tau, "U_xx": d2q / tau ** 1.5,
        "Theta_xx": d2 / tau,
        "U_t": -0.5 * (xi * dq + q) / tau ** 1.5,
        "V_t": -0.5 * rp * xi * d1 / tau,
        "Theta_t": -0.5 * xi * d1 / tau,
    }
    return out


def contact_residuals(profile: ContactProfile, x, t, g: GasParams):
    """Momentum and energy residuals of the contact ansatz.

    Writing U = u_shift + q(xi)/sqrt(1+t) with q = c_U Theta**(beta-1) Theta',
    the ansatz satisfies mass exactly and

        momentum: U_t - mu_tilde*(U_x/V)_x             = O((1+t)**-1.5)
        energy:   -(viscous heating) = -mu_tilde*U_x**2/V = O((1+t)**-2).

    Returns a dict with keys "momentum" and "energy".
    """
    d = contact_derivs(profile, x, t, g)
    V, U_x, U_xx, V_x, U_t = d["V"], d["U_x"], d["U_xx"], d["V_x"], d["U_t"]
    momentum = U_t - g.mu_tilde * (U_xx / V - U_x * V_x / V ** 2)
    energy = -g.mu_tilde * U_x ** 2 / V
    return {"momentum": momentum, "energy": energy}
