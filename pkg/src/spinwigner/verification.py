"""Oracle suites behind ``spinwigner verify``.

Each suite returns a :class:`SuiteResult` with the worst residual it saw and
the tolerance it was held to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import singlet, transforms
from .config import DEFAULT_TOLERANCES, Tolerances
from .spin_core import (
    TWO_SPIN_ORACLE_MAX_TWICE_J,
    SpinQuantumNumber,
    density_matrix,
    random_directions,
    random_hermitian,
    singlet_correlation,
    singlet_state,
)

_EPS = np.finfo(float).eps


@dataclass
class SuiteResult:
    suite: str
    twice_j: int
    residual: float
    tolerance: float
    skipped: bool = False

    @property
    def ok(self) -> bool:
        return self.skipped or self.residual <= self.tolerance


def conditioning_floor(spin: SpinQuantumNumber) -> float:
    """Smallest residual the Q -> Weyl rescaling can promise on both spheres.

    Roundoff in the top-degree Q coefficient is multiplied by 1/S_{j,2j}^2.
    """
    return 10 * _EPS * math.exp(-2 * transforms.log_s_coefficient(spin, spin.twice_j))


def kernel_identity(spin, tol: Tolerances = DEFAULT_TOLERANCES) -> SuiteResult:
    target = 1.0 / spin.dim
    worst = max(
        abs(
            math.exp(transforms.log_a_coefficient(spin, l) - 2 * transforms.log_s_coefficient(spin, l))
            / target
            - 1.0
        )
        for l in range(spin.dim)
    )
    return SuiteResult("kernel_identity", spin.twice_j, worst, tol.kernel_identity_rel)


def normalization(spin, tol: Tolerances = DEFAULT_TOLERANCES) -> SuiteResult:
    return SuiteResult("normalization", spin.twice_j, abs(singlet.normalization(spin) - 1.0), tol.normalization_abs)


def traciality(spin, tol: Tolerances = DEFAULT_TOLERANCES, pairs: int = 20, seed: int = 0) -> SuiteResult:
    rng = np.random.default_rng(seed + spin.twice_j)
    quad = transforms.quadrature_for_spin(spin)
    worst = 0.0
    for _ in range(pairs):
        lhs, rhs = transforms.traciality_check(random_hermitian(spin, rng), random_hermitian(spin, rng), quad)
        worst = max(worst, abs(lhs - rhs))
    return SuiteResult("traciality", spin.twice_j, worst, max(tol.traciality_abs, conditioning_floor(spin)))


def oracle_equivalence(spin, tol: Tolerances = DEFAULT_TOLERANCES) -> SuiteResult:
    if spin.twice_j > TWO_SPIN_ORACLE_MAX_TWICE_J:
        return SuiteResult("oracle_equivalence", spin.twice_j, math.nan, tol.oracle_abs, skipped=True)
    quad = transforms.quadrature_for_spin(spin)
    w = transforms.wigner_function(density_matrix(singlet_state(spin)), quad)
    x = np.clip(-(quad.directions @ quad.directions.T), -1.0, 1.0)
    worst = float(np.max(np.abs(w - singlet.wigner_exact_sum(spin, x))))
    return SuiteResult("oracle_equivalence", spin.twice_j, worst, max(tol.oracle_abs, conditioning_floor(spin)))


def correlation(spin, tol: Tolerances = DEFAULT_TOLERANCES, pairs: int = 3, seed: int = 0) -> SuiteResult:
    if spin.twice_j > TWO_SPIN_ORACLE_MAX_TWICE_J:
        return SuiteResult("correlation", spin.twice_j, math.nan, tol.correlation_abs, skipped=True)
    rng = np.random.default_rng(seed + 1000 + spin.twice_j)
    worst = 0.0
    for _ in range(pairs):
        a, b = random_directions(rng, 2)
        dense = singlet_correlation(spin, a, b)
        worst = max(worst, abs(singlet.phase_space_correlation(spin, a, b) - dense))
        worst = max(worst, abs(dense + spin.casimir / 3 * float(a @ b)))
    return SuiteResult("correlation", spin.twice_j, worst, max(tol.correlation_abs, conditioning_floor(spin)))


SUITES = {
    "kernel_identity": kernel_identity,
    "normalization": normalization,
    "traciality": traciality,
    "oracle_equivalence": oracle_equivalence,
    "correlation": correlation,
}


def run_all(spins, tol: Tolerances = DEFAULT_TOLERANCES) -> list[SuiteResult]:
    return [suite(spin, tol) for spin in spins for suite in SUITES.values()]
