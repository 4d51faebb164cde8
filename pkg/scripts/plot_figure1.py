"""Plot the CSV curves written by ``spinwigner figure1``.

Needs matplotlib, which the package itself does not depend on.
"""

import argparse
import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def load(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    data = np.array(rows[1:], dtype=float)
    return dict(zip(rows[0], data.T))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("directory", type=Path)
    parser.add_argument("--out", type=Path, default=Path("figure1.png"))
    args = parser.parse_args()
    files = sorted(args.directory.glob("wigner_singlet_j*.csv"), key=lambda p: len(p.read_bytes()))
    fig, axes = plt.subplots(1, len(files), figsize=(5 * len(files), 4))
    for ax, path in zip(np.atleast_1d(axes), files):
        cols = load(path)
        ax.plot(cols["x"], cols["W_exact"], lw=0.8, label="exact")
        ax.plot(cols["x"], cols["W_asymptotic"], lw=0.6, ls="--", label="Bessel form")
        ax.set_title(path.stem.replace("wigner_singlet_j", "j = ").replace("_", "/"))
        ax.set_xlabel("x = -n1.n2")
        ax.axhline(0, color="k", lw=0.4)
        ax.legend()
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(args.out)


if __name__ == "__main__":
    main()
