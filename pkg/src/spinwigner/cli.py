"""Command-line front end.

    spinwigner figure1 [--j LIST] [--points N] [--out DIR] [--format csv|json]
    spinwigner props --j LIST
    spinwigner verify [--j-max J] [--tol T]
    spinwigner correlate --j J --a x,y,z --b x,y,z [--oracle]

Spins are given as "5", "19/2" or "9.5", or as integers 2j via --twice-j.
Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import singlet, verification
from .config import DEFAULT_TOLERANCES, FIGURE1_SPINS, RunConfig, default_output_dir
from .spin_core import (
    TWO_SPIN_ORACLE_MAX_TWICE_J,
    SpinQuantumNumber,
    as_spin,
    singlet_correlation,
)

log = logging.getLogger("spinwigner")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _parse_spin_list(text: str) -> list[SpinQuantumNumber]:
    try:
        return [SpinQuantumNumber.parse(t) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _parse_twice_j_list(text: str) -> list[SpinQuantumNumber]:
    try:
        return [SpinQuantumNumber(int(t)) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _parse_vector(text: str) -> np.ndarray:
    try:
        v = np.array([float(t) for t in text.split(",")])
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a vector: {text!r}") from None
    if v.shape != (3,):
        raise argparse.ArgumentTypeError(f"expected three components, got {text!r}")
    return v


def _spins(args, default=()) -> list[SpinQuantumNumber]:
    spins = []
    for group in (args.j or []) + (args.twice_j or []):
        spins.extend(group)
    return spins or [SpinQuantumNumber.parse(s) for s in default]


def _tag(spin: SpinQuantumNumber) -> str:
    return str(spin).replace("/", "_")


def _fmt(v: float) -> str:
    return "nan" if math.isnan(v) else f"{v:.17g}"


# ---------------------------------------------------------------------------
# figure1


def figure1_columns(spin: SpinQuantumNumber, points: int) -> dict[str, np.ndarray]:
    xs = singlet.chebyshev_grid(points)
    return {
        "x": xs,
        "W_exact": np.asarray(singlet.wigner_exact_sum(spin, xs)),
        "W_cd": np.asarray(singlet.wigner_cd(spin, xs)),
        "W_asymptotic": np.asarray(singlet.wigner_asymptotic_x(spin, xs)),
    }


def cmd_figure1(config: RunConfig) -> int:
    try:
        config.out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise UsageError(f"cannot create output directory {config.out}: {exc}") from None
    for spin in config.spins:
        cols = figure1_columns(spin, config.points)
        path = config.out / f"wigner_singlet_j{_tag(spin)}.{config.fmt}"
        try:
            with open(path, "w", newline="") as fh:
                if config.fmt == "csv":
                    writer = csv.writer(fh, lineterminator="\n")
                    writer.writerow(list(cols))
                    for row in zip(*cols.values()):
                        writer.writerow([_fmt(v) for v in row])
                else:
                    doc = {
                        "j": str(spin),
                        "twice_j": spin.twice_j,
                        "columns": {
                            k: [None if math.isnan(v) else float(v) for v in arr] for k, arr in cols.items()
                        },
                    }
                    json.dump(doc, fh)
        except OSError as exc:
            raise UsageError(f"cannot write {path}: {exc}") from None
        print(path)
    return EXIT_OK


# ---------------------------------------------------------------------------
# props


def property_checks(report: singlet.PropertyReport, tol=DEFAULT_TOLERANCES) -> list[dict]:
    """Named pass/fail checks for one PropertyReport."""

    def rel(a, b):
        return abs(a / b - 1.0)

    checks = [
        ("value_A", rel(report.value_A, report.value_A_expected), tol.endpoint_rel),
        ("value_B", rel(report.value_B, report.value_B_expected), tol.endpoint_rel),
        ("zero_count", abs(report.zero_count - report.twice_j), 0),
        ("normalization", abs(report.normalization - 1.0), tol.normalization_abs),
        (
            "envelope_exponent",
            abs(report.envelope_exponent - tol.envelope_exponent),
            tol.envelope_exponent_tol,
        ),
    ]
    fz_tol = tol.first_zero_tolerance(report.twice_j)
    if fz_tol is not None:
        checks.append(("first_zero_gap", rel(report.first_zero_gap, report.first_zero_asymptotic), fz_tol))
    return [
        {"j": report.j, "field": name, "residual": float(r), "tolerance": float(t), "ok": bool(r <= t)}
        for name, r, t in checks
    ]


def cmd_props(config: RunConfig) -> int:
    reports, checks = [], []
    for spin in config.spins:
        rep = singlet.property_report(spin)
        reports.append(rep.to_dict())
        checks.extend(property_checks(rep, config.tolerances))
    ok = all(c["ok"] for c in checks)
    json.dump({"reports": reports, "checks": checks, "ok": ok}, sys.stdout, indent=2)
    print()
    for c in checks:
        if not c["ok"]:
            print(f"FAIL j={c['j']} {c['field']}: residual {c['residual']:.3g} > {c['tolerance']:.3g}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# verify


def cmd_verify(config: RunConfig) -> int:
    results = verification.run_all(config.spins, config.tolerances)
    names = list(verification.SUITES)
    print(f"{'j':>6}  " + "  ".join(f"{n:>18}" for n in names))
    for spin in config.spins:
        row = [r for r in results if r.twice_j == spin.twice_j]
        cells = []
        for r in row:
            if r.skipped:
                cells.append(f"{'skip':>18}")
            else:
                cells.append(f"{('PASS' if r.ok else 'FAIL') + f' {r.residual:.1e}':>18}")
        print(f"{str(spin):>6}  " + "  ".join(cells))
    checked = [r for r in results if not r.skipped]
    failed = [r for r in checked if not r.ok]
    if failed:
        worst = max(failed, key=lambda r: r.residual / r.tolerance)
        print(
            f"FAILED {len(failed)}/{len(checked)}; worst: {worst.suite} at 2j={worst.twice_j}, "
            f"residual {worst.residual:.3e} (tolerance {worst.tolerance:.1e})"
        )
        return EXIT_FAIL
    worst = max(checked, key=lambda r: r.residual / r.tolerance)
    print(
        f"passed {len(checked)}/{len(checked)}; largest residual/tolerance: {worst.suite} at "
        f"2j={worst.twice_j}, {worst.residual:.3e} / {worst.tolerance:.1e}"
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# correlate


def cmd_correlate(spin: SpinQuantumNumber, a: np.ndarray, b: np.ndarray, oracle: bool) -> int:
    for name, v in (("a", a), ("b", b)):
        if abs(np.linalg.norm(v) - 1.0) > 1e-6:
            raise UsageError(f"--{name} must be a unit vector (|{name}| = {np.linalg.norm(v):.6g})")
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    out = {
        "j": str(spin),
        "a": a.tolist(),
        "b": b.tolist(),
        "E_phase_space": singlet.phase_space_correlation(spin, a, b),
        "E_closed_form": -spin.casimir / 3 * float(a @ b),
    }
    if oracle:
        if spin.twice_j > TWO_SPIN_ORACLE_MAX_TWICE_J:
            raise UsageError(f"--oracle needs 2j <= {TWO_SPIN_ORACLE_MAX_TWICE_J}")
        out["E_dense"] = singlet_correlation(spin, a, b)
    json.dump(out, sys.stdout, indent=2)
    print()
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinwigner", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def spin_flags(p, required=False):
        p.add_argument("--j", type=_parse_spin_list, action="append", help="comma-separated spins, e.g. 5,19/2,40")
        p.add_argument("--twice-j", type=_parse_twice_j_list, action="append", help="comma-separated values of 2j")

    p = sub.add_parser("figure1", help="write W(x) curves for the singlet")
    spin_flags(p)
    p.add_argument("--points", type=int, default=4000)
    p.add_argument("--out", type=Path, default=None, help="output directory (default $SPINWIGNER_OUT or .)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("props", help="print property reports as JSON")
    spin_flags(p)

    p = sub.add_parser("verify", help="run the dense-matrix oracle suites")
    p.add_argument("--j-max", default="3", help="largest spin to check (default 3)")
    p.add_argument("--tol", type=float, default=None, help="override all absolute tolerances")

    p = sub.add_parser("correlate", help="singlet correlation <(J1.a)(J2.b)> from phase space")
    p.add_argument("--j", required=True)
    p.add_argument("--a", type=_parse_vector, required=True)
    p.add_argument("--b", type=_parse_vector, required=True)
    p.add_argument("--oracle", action="store_true", help="also report the dense-trace value")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(format="%(message)s", level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        if args.command == "figure1":
            config = RunConfig(
                "figure1",
                spins=_spins(args, FIGURE1_SPINS),
                points=args.points,
                out=args.out if args.out is not None else default_output_dir(),
                fmt=args.format,
            )
            return cmd_figure1(config)
        if args.command == "props":
            return cmd_props(RunConfig("props", spins=_spins(args, FIGURE1_SPINS)))
        if args.command == "verify":
            top = as_spin(args.j_max)
            spins = [SpinQuantumNumber(t) for t in range(top.twice_j + 1)]
            return cmd_verify(RunConfig("verify", spins=spins, tolerances=DEFAULT_TOLERANCES.with_abs(args.tol)))
        if args.command == "correlate":
            return cmd_correlate(as_spin(args.j), args.a, args.b, args.oracle)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    parser.error(f"unknown command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
