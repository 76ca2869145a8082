"""Common information of correlated Gaussians and its rate allocation.

Shows the bivariate closed form, the equicorrelated N-variate growth, and the
Gray-Wyner allocation identity (R0 + R1 + R2 equals the joint rate, with R0
pinned at the common information when the intermediate distortions sit at the
corner 1 - rho).

Run: python3 demos/gaussian_common_info.py
"""

import numpy as np

from witl.closed_form import (
    GaussParams,
    gauss_allocation,
    gauss_common_info,
    gauss_common_info_N,
    gauss_joint_rd,
)


def main():
    print("Bivariate common information C(rho) = (1/2) log2((1+rho)/(1-rho)):")
    for rho in (0.1, 0.3, 0.5, 0.7, 0.9):
        print(f"  rho = {rho:.1f}: C = {gauss_common_info(GaussParams(rho)):.6f} bits")

    g = GaussParams(0.5)
    print("\nEquicorrelated N-variate case at rho = 0.5:")
    for n in (2, 3, 5, 10):
        print(f"  N = {n:2d}: C = {gauss_common_info_N(g, n):.6f} bits")

    print("\nAllocation identity at rho = 0.5, target distortions (0.2, 0.3):")
    lim = 1.0 - g.rho
    for dp in (lim, 0.4, 0.35):
        r0, r1, r2 = gauss_allocation(g, dp, dp, 0.2, 0.3)
        total = r0 + r1 + r2
        joint = gauss_joint_rd(g, 0.2, 0.3)
        print(f"  D' = {dp:.2f}: R0 = {r0:.6f}, R1 = {r1:.6f}, R2 = {r2:.6f}; "
              f"sum - R_joint = {total - joint:.1e}")
    print(f"  corner D' = 1 - rho gives R0 = C: "
          f"{abs(gauss_allocation(g, lim, lim, 0.2, 0.3)[0] - gauss_common_info(g)):.1e}")


if __name__ == "__main__":
    main()
