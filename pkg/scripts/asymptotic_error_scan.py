"""Tabulate how well the Bessel form tracks the exact singlet Wigner function.

For each j the gamma range is split into windows; each row gives the largest
error relative to the local oscillation amplitude, next to gamma_hi^2/24.
"""

import argparse

import numpy as np

from spinwigner.singlet import asymptotic_relative_error
from spinwigner.spin_core import SpinQuantumNumber


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--j", default="5,19/2,40,100")
    parser.add_argument("--edges", default="0.05,0.2,0.4,0.6,0.7,0.8,1.0,1.5")
    args = parser.parse_args()
    edges = [float(e) for e in args.edges.split(",")]
    print("j,gamma_lo,gamma_hi,max_rel_err,gamma_hi^2/24")
    for text in args.j.split(","):
        spin = SpinQuantumNumber.parse(text)
        for lo, hi in zip(edges[:-1], edges[1:]):
            g = np.linspace(lo, hi, 4001)
            err = asymptotic_relative_error(spin, g)
            print(f"{spin},{lo},{hi},{err.max():.5f},{hi**2 / 24:.5f}")


if __name__ == "__main__":
    main()
