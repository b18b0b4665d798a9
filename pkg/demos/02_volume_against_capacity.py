"""Relative volume is controlled by relative capacity.

For product sets the relative capacity is the smallest factor capacity, so
the volume/capacity exponent can be read off a log-log fit. Complex discs
show exponent 2, real intervals exponent 1; these are the sharp cases.
Run: python demos/02_volume_against_capacity.py
"""
from pluricap.bounds import c_n
from pluricap.capacity import product_T
from pluricap.geometry import PlaneDisc, PlaneInterval
from pluricap.harness import sharpness_probe


def main():
    n = 2
    print(f"c_{n} = {c_n(n)}")
    print("\nK_r = disc(r) x disc(1) in the bidisc")
    for r in (0.1, 0.3, 0.6):
        T = product_T([(PlaneDisc(0j, r), PlaneDisc(0j, 1.0)), (PlaneDisc(0j, 1.0), PlaneDisc(0j, 1.0))]).value
        print(f"  r={r}: relvol={r * r:.4f}  c_n T^2={float(c_n(n)) * T * T:.4f}")

    print("\nFitted exponents (relvol ~ T^k)")
    for fam in sharpness_probe(n=n, m=1).families:
        print(f"  {fam.name:35s} slope={fam.slope:.4f} target={fam.target}")

    T = product_T([(PlaneInterval(-0.6, 0.6), PlaneInterval(-1, 1))] * 2).value
    print(f"\nT of the cube of side 0.6 inside [-1,1]^2: {T:.15f}")


if __name__ == "__main__":
    main()
