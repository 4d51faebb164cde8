"""Run configuration and the default tolerances used by the CLI and the
acceptance suite."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from pathlib import Path

from .spin_core import SpinQuantumNumber

OUTPUT_DIR_ENV = "SPINWIGNER_OUT"

FIGURE1_SPINS = ("5", "19/2", "40")


@dataclass(frozen=True)
class Tolerances:
    endpoint_rel: float = 1e-12
    kernel_identity_rel: float = 1e-12
    oracle_abs: float = 1e-9
    traciality_abs: float = 1e-8
    normalization_abs: float = 1e-9
    correlation_abs: float = 1e-8
    # first-zero gap against j11^2 / (2 (2j+1)^2); checked only from 2j = 10 up
    first_zero_rel: float = 0.10
    first_zero_rel_large: float = 0.03  # from 2j = 80 up
    asymptotic_rel: float = 0.02
    envelope_exponent: float = 0.5
    envelope_exponent_tol: float = 0.1

    def with_abs(self, tol: float | None) -> "Tolerances":
        """Override every absolute oracle tolerance at once."""
        if tol is None:
            return self
        return replace(
            self,
            oracle_abs=tol,
            traciality_abs=tol,
            normalization_abs=tol,
            correlation_abs=tol,
        )

    def first_zero_tolerance(self, twice_j: int) -> float | None:
        if twice_j >= 80:
            return self.first_zero_rel_large
        if twice_j >= 10:
            return self.first_zero_rel
        return None


DEFAULT_TOLERANCES = Tolerances()


def default_output_dir() -> Path:
    return Path(os.environ.get(OUTPUT_DIR_ENV, "."))


@dataclass
class RunConfig:
    command: str
    spins: list[SpinQuantumNumber] = field(default_factory=list)
    points: int = 4000
    tolerances: Tolerances = DEFAULT_TOLERANCES
    out: Path = field(default_factory=default_output_dir)
    fmt: str = "csv"

    def __post_init__(self):
        if self.points < 16:
            raise ValueError("grid size must be at least 16")
        if self.fmt not in ("csv", "json"):
            raise ValueError(f"unknown output format {self.fmt!r}")
