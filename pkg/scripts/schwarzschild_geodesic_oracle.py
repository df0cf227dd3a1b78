"""Compare the closed-form radial in/out Doppler factor with integrated geodesics.

Integrates the radial geodesic equations (Christoffel form) for an ingoing
observer dropped from r_max and an outgoing one launched from r_min, then
evaluates g(u_in, u_out) and the resulting dsf at a few radii.
"""

import argparse

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from dopplerspin.doppler import dsf_lorentzian
from dopplerspin.field_analysis import schwarzschild_g_in_out


def velocities(r_start, radii, energy, outgoing, r_s):
    f = lambda r: 1 - r_s / r
    fp = lambda r: r_s / r ** 2

    def rhs(tau, y):
        _, r, td, rd = y
        return [td, rd, -fp(r) / f(r) * td * rd, -f(r) * fp(r) / 2 * td ** 2 + fp(r) / (2 * f(r)) * rd ** 2]

    sign = 1.0 if outgoing else -1.0
    y0 = [0.0, r_start, energy / f(r_start), sign * np.sqrt(energy ** 2 - f(r_start))]
    stop = lambda tau, y: y[1] - (max(radii) * 1.001 if outgoing else min(radii) * 0.999)
    stop.terminal = True
    sol = solve_ivp(rhs, (0, 1e4), y0, rtol=1e-12, atol=1e-12, dense_output=True, events=stop)
    return np.array([sol.sol(brentq(lambda s: sol.sol(s)[1] - r, 0, sol.t[-1], xtol=1e-14))[2:] for r in radii])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rmin", type=float, default=1.05)
    ap.add_argument("--rmax", type=float, default=10.0)
    ap.add_argument("--energies", type=float, nargs=2, default=(1.0, 1.0))
    ap.add_argument("--rs", type=float, default=1.0)
    args = ap.parse_args()
    radii = np.geomspace(args.rmin * 1.01, args.rmax * 0.95, 12)
    e1, e2 = args.energies
    u_in = velocities(args.rmax, radii, e1, False, args.rs)
    u_out = velocities(args.rmin, radii, e2, True, args.rs)
    f = 1 - args.rs / radii
    g_num = f * u_in[:, 0] * u_out[:, 0] - u_in[:, 1] * u_out[:, 1] / f
    g_closed = schwarzschild_g_in_out(radii, args.rs, e1, e2)
    print(f"{'r':>10} {'g closed':>16} {'g geodesic':>16} {'rel diff':>10} {'dsf':>14}")
    for r, a, b in zip(radii, g_closed, g_num):
        print(f"{r:10.5f} {a:16.10f} {b:16.10f} {abs(a - b) / a:10.2e} {dsf_lorentzian(a):14.8f}")


if __name__ == "__main__":
    main()
