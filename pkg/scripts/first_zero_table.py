"""First zero of the singlet Wigner function against its large-j estimate.

Prints 2j, the gap 1 - x_0 found by bisection, the estimate
j11^2 / (2 (2j+1)^2) and their ratio.
"""

import argparse

from spinwigner.singlet import first_zero, first_zero_gap_asymptotic
from spinwigner.spin_core import SpinQuantumNumber


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-twice-j", type=int, default=160)
    args = parser.parse_args()
    print("twice_j,gap,estimate,ratio")
    for t in range(1, args.max_twice_j + 1):
        spin = SpinQuantumNumber(t)
        _, gap = first_zero(spin)
        est = first_zero_gap_asymptotic(spin)
        print(f"{t},{gap:.12e},{est:.12e},{gap / est:.6f}")


if __name__ == "__main__":
    main()
