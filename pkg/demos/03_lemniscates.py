"""Sublevel sets shrink exponentially.

For u = log|z| on the unit disc the set {u <= -s} is the disc of radius
e^(-s), so its relative area is exactly e^(-2s). The Monte-Carlo table is
compared against that and against the uniform bound 4 e^(-2s).
Run: python demos/03_lemniscates.py
"""
import math

import numpy as np

from pluricap.geometry import Ball
from pluricap.integrability import LogAbs, polynomial_lemniscate_decay, lemniscate_decay
from pluricap.polynomials import Polynomial


def main():
    table = lemniscate_decay(LogAbs(1), Ball.unit(1), np.linspace(0.5, 3.0, 6), 400_000, seed=0)
    print("   s    observed    exact      bound")
    for row in table.rows:
        print(f"{row.s:5.2f}  {row.ratio:.5f}  {math.exp(-2 * row.s):.5f}  {row.bound:.5f}")
    print("all bounds hold:", table.all_pass)

    P = Polynomial({(2,): 1.0, (0,): -0.25})
    lem = polynomial_lemniscate_decay(P, Ball.unit(1), [0.2, 0.4, 0.6], 200_000, seed=1)
    print("\n{|z^2 - 1/4| <= eps^2} relative to the unit disc")
    for row in lem.rows:
        print(f"  eps={row.s:.1f}: {row.ratio:.5f} <= {row.bound:.5f}")


if __name__ == "__main__":
    main()
