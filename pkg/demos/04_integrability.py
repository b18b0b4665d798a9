"""Integrability of Lelong-class and finite-mass functions.

Moments of -log|z| over the unit disc have the closed form Γ(p+1)/2^p, the
BMO norm of log|z| on the unit disc is 1/e, and the radial Green function
has sublevel capacities that meet their bound with equality.
Run: python demos/04_integrability.py
"""
import math

from pluricap.bounds import GrowthFunction
from pluricap.geometry import AmbientSpace, Ball
from pluricap.integrability import BallFamily, LogAbs, bmo_norm, eta, g_moment
from pluricap.ma_capacity import RadialGreen


def main():
    print("moments of -log|z| over the unit disc")
    for p in (0.5, 1, 2, 3):
        res = g_moment(LogAbs(1), Ball.unit(1), GrowthFunction.power(p), 200_000, seed=p * 10)
        e = res.estimate
        print(f"  p={p}: {e.mean:.4f} ± {e.std_error:.4f}  exact={math.gamma(p + 1) / 2 ** p:.4f}  "
              f"{res.report.status}")

    res = bmo_norm(LogAbs(1), AmbientSpace(1), BallFamily(count=4, n_samples=50_000), 0, 1.0, 1.0,
                   extra_balls=[Ball.unit(1)])
    print(f"\nBMO norm of log|z|: observed {res.observed:.4f} (1/e = {1 / math.e:.4f}); "
          f"bound {res.report.rhs.value:.2f} {res.report.status}")

    for n in (1, 2, 3):
        phi = RadialGreen(n)
        print(f"n={n}: s^n cap({{phi <= -s}}) at s=2 equals mass {phi.sublevel_capacity(2.0) * 2 ** n:.6f}")
    print("eta of the unit-disc Green function:", eta(Ball.unit(1), [RadialGreen(1)]).value)


if __name__ == "__main__":
    main()
