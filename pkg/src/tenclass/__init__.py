"""Structured tensor classes (Nekrasov, B-Nekrasov, H, P) and small TCP solvers."""

from .bnekrasov import (
    ConditionReport,
    Decomposition,
    check_conditions,
    decompose,
    is_b_nekrasov_conditions,
    is_b_nekrasov_definition,
    r_plus,
)
from .errors import (
    DuplicateIndex,
    HypothesisViolated,
    NoConvergence,
    NoSolutionFound,
    NotNekrasov,
    OutOfRange,
    ParseError,
    ZeroDiagonal,
)
from .io import parse_tensor, parse_vector, serialize_tensor, write_tensor
from .nekrasov import LambdaVector, is_nekrasov, is_nekrasov_z, lambda_vector
from .poracle import PVerdict, add_constant_rows, p0_falsify, p_falsify
from .scaling import (
    ScalingCertificate,
    build_w,
    build_w_b_nekrasov,
    c_zero_implies_h,
    has_trailing_nonzero,
    is_nonsingular_h,
    is_nonsingular_m,
    spectral_radius_nonneg,
)
from .tcp import (
    TCPInstance,
    TCPSolution,
    is_feasible,
    residual,
    solve_fixed_point,
    solve_support_enumeration,
)
from .tensor import (
    DenseTensor,
    comparison_tensor,
    contract_vector,
    has_positive_diagonal,
    identity_tensor,
    is_diag_dominant,
    is_z_tensor,
    offdiag_row_sum,
    polyval,
    scale_columns,
)
from .verdict import ClassVerdict, Status

__version__ = "0.1.0"
