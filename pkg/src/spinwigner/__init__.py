"""Spin-j phase-space (Q and Weyl/Wigner) transforms and the Wigner function
of the two-spin singlet."""

from .singlet import (
    first_zero,
    property_report,
    q_closed_form,
    wigner_asymptotic,
    wigner_cd,
    wigner_exact_sum,
)
from .spin_core import (
    DenseOperator,
    Direction,
    SpinQuantumNumber,
    StateVector,
    coherent_state,
    density_matrix,
    singlet_state,
    spin_operators,
)
from .transforms import (
    build_quadrature,
    project_to_harmonics,
    q_from_weyl,
    q_transform_oracle,
    traciality_check,
    weyl_from_q,
    wigner_normalize,
)

__version__ = "0.1.0"
