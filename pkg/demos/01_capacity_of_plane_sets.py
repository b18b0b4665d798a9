"""Logarithmic capacity of plane sets, three ways.

Fekete points give a decreasing sequence of discrete diameters whose limit is
the capacity; the Chebyshev optimizer gives a two-sided interval for the
relative capacity T inside a disc; closed forms pin both down on discs and
intervals. Run: python demos/01_capacity_of_plane_sets.py
"""
import math

from pluricap.capacity import chebyshev_T, fekete_capacity_1d, plane_T_exact
from pluricap.geometry import Ball, PlaneDisc, PlaneInterval, ProductRegion


def main():
    print("Fekete estimates of c(K)")
    for name, K, truth in (("unit disc", PlaneDisc(0j, 1.0), 1.0),
                           ("[-1, 1]", PlaneInterval(-1, 1), 0.5)):
        est = fekete_capacity_1d(ProductRegion((K,)), 64)
        print(f"  {name:10s} upper={est.hi:.5f} extrapolated={est.heuristic:.5f} exact={truth}")

    print("\nRelative capacity T of the disc of radius 0.5 inside the unit disc")
    for d in (2, 4, 8):
        est = chebyshev_T(ProductRegion((PlaneDisc(0j, 0.5),)), Ball.unit(1), d)
        print(f"  d_max={d}: [{est.lo:.6f}, {est.hi:.6f}]")

    print("\nClosed form for centred intervals: T = r / (1 + sqrt(1 - r^2))")
    for r in (0.1, 0.5, 0.9):
        T, _ = plane_T_exact(PlaneInterval(-r, r), PlaneInterval(-1, 1))
        print(f"  r={r}: T={T:.6f}  check={r / (1 + math.sqrt(1 - r * r)):.6f}")


if __name__ == "__main__":
    main()
