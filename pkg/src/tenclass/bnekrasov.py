"""The B+ + C splitting and two independent B-Nekrasov membership tests.

``is_b_nekrasov_definition`` decomposes A and runs the Nekrasov-Z test on
B+.  ``is_b_nekrasov_conditions`` never looks at |b+| entries of the row under
test; it evaluates closed-form row conditions on the entries of A itself, so
agreement between the two is a meaningful cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .nekrasov import first_block_mask, is_nekrasov_z, partial_lambda_vector
from .tensor import DenseTensor, _trailing_product, diagonal_mask, is_nonnegative, is_z_tensor
from .verdict import ClassVerdict, fails, holds


@dataclass(frozen=True)
class Decomposition:
    bplus: DenseTensor
    c: DenseTensor
    rplus: np.ndarray

    def reconstruct(self) -> DenseTensor:
        return self.bplus + self.c

    @property
    def c_is_zero(self) -> bool:
        return not np.any(self.rplus)


@dataclass(frozen=True)
class ConditionReport:
    cond_a: bool
    cond_b: bool
    margin_a: float
    margins_b: np.ndarray
    bound_b: np.ndarray
    alpha: np.ndarray
    failed_index: int | None = None
    reason: str = ""

    def to_dict(self) -> dict:
        nan_to_none = lambda xs: [None if np.isnan(x) else float(x) for x in xs]  # noqa: E731
        return {
            "cond_a": self.cond_a,
            "cond_b": self.cond_b,
            "margin_a": self.margin_a,
            "margins_b": nan_to_none(self.margins_b),
            "bound_b": nan_to_none(self.bound_b),
            "alpha": nan_to_none(self.alpha),
            "failed_index": self.failed_index,
            "reason": self.reason,
        }


def _offdiag_rows(A: DenseTensor) -> np.ndarray:
    """Rows reshaped to (n, n**(m-1)) with the diagonal slot set to -inf."""
    arr = np.where(diagonal_mask(A.order, A.dim), -np.inf, A.array)
    return arr.reshape(A.dim, -1)


def r_plus(A: DenseTensor) -> np.ndarray:
    """r_i+ = max(0, largest off-diagonal entry of row i)."""
    return np.maximum(0.0, _offdiag_rows(A).max(axis=1))


def decompose(A: DenseTensor) -> Decomposition:
    """Split A = B+ + C, where C has constant rows r_i+ and B+ = A - C.

    Reassembly ``bplus + c`` is bit-exact whenever every difference
    a - r_i+ is representable, e.g. entries on a common binary grid.
    """
    r = r_plus(A)
    shift = r.reshape((A.dim,) + (1,) * (A.order - 1))
    bplus = A.with_array(A.array - shift)
    c = A.with_array(np.broadcast_to(shift, A.shape))
    return Decomposition(bplus, c, r)


def is_b_nekrasov_definition(A: DenseTensor, tol: float = 0.0) -> ClassVerdict:
    dec = decompose(A)
    verdict = is_nekrasov_z(dec.bplus, tol, positive_diagonal=True)
    details = dict(verdict.details, r_plus=dec.rplus, bplus_diagonal=dec.bplus.diagonal())
    if verdict:
        return holds("bnekrasov_definition", **details)
    return fails("bnekrasov_definition", verdict.index, verdict.reason, **details)


def check_conditions(A: DenseTensor, tol: float = 0.0) -> ConditionReport:
    """Evaluate row conditions (a) and (b) on the entries of A."""
    m, n = A.order, A.dim
    N = n ** (m - 1)
    rows = A.array
    r = r_plus(A)

    row1 = rows[0]
    total = float(row1.sum())
    off1 = _offdiag_rows(A)[0]
    max_off = float(off1.max()) if n > 1 else -np.inf
    margin_a = min(total, total / N - max_off)
    cond_a = margin_a > tol

    alpha = partial_lambda_vector(decompose(A).bplus).alphas
    margins_b = np.full(n, np.nan)
    bound_b = np.full(n, np.nan)
    failed_b: int | None = None
    reason_b = ""
    for i in range(1, n):
        if np.any(np.isnan(alpha[:i])):
            failed_b = failed_b or i + 1
            reason_b = reason_b or "alpha undefined (zero diagonal in B+)"
            continue
        weights = _trailing_product(np.where(np.arange(n) < i, alpha, 0.0), m)
        block = first_block_mask(m, n, i + 1)
        row = rows[i]
        # The second sum runs over tuples outside the block, diagonal included.
        numerator = (row * weights).sum() + row[~block].sum()
        denominator = weights.sum() + N - i ** (m - 1)
        bound = min(numerator / denominator, float(row[(i,) * (m - 1)]))
        bound_b[i] = bound
        margins_b[i] = bound - r[i]
        if not margins_b[i] > tol and failed_b is None:
            failed_b = i + 1
            reason_b = "r_i+ is not below the row bound"
    cond_b = failed_b is None
    if not cond_a:
        return ConditionReport(False, cond_b, margin_a, margins_b, bound_b, alpha, 1,
                               "row 1 sum or mean condition fails")
    return ConditionReport(True, cond_b, margin_a, margins_b, bound_b, alpha, failed_b, reason_b)


def is_b_nekrasov_conditions(A: DenseTensor, tol: float = 0.0) -> ClassVerdict:
    report = check_conditions(A, tol)
    if report.cond_a and report.cond_b:
        return holds("bnekrasov_conditions", conditions=report)
    return fails("bnekrasov_conditions", report.failed_index, report.reason, conditions=report)


def check_decomposition_structure(dec: Decomposition) -> bool:
    """B+ is Z and C is nonnegative with constant rows."""
    crows = dec.c.entries.reshape(dec.c.dim, -1)
    constant = bool(np.all(crows == crows[:, :1]))
    return is_z_tensor(dec.bplus) and is_nonnegative(dec.c) and constant
