"""Nekrasov quantities Lambda_i and Nekrasov / Nekrasov-Z membership."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ZeroDiagonal
from .tensor import DenseTensor, _trailing_product, diagonal_mask, is_z_tensor, offdiag_mask
from .verdict import ClassVerdict, fails, holds


@dataclass(frozen=True)
class LambdaVector:
    """Lambda_i(A) together with Lambda_i / |a_{i...i}| and its (m-1)-th root."""

    values: np.ndarray
    ratios: np.ndarray
    alphas: np.ndarray

    def to_dict(self) -> dict:
        return {"values": self.values.tolist(), "ratios": self.ratios.tolist()}


def first_block_mask(order: int, dim: int, i: int) -> np.ndarray:
    """Tuples (i_2, ..., i_m) with every component <= i - 1 (1-based ``i``)."""
    inside = (np.arange(dim) < i - 1).astype(float)
    return _trailing_product(inside, order) > 0


def _recursion(A: DenseTensor, stop_at_zero: bool) -> LambdaVector:
    m, n = A.order, A.dim
    diag = np.abs(A.diagonal())
    absrows = np.where(diagonal_mask(m, n), 0.0, np.abs(A.array))
    values = np.full(n, np.nan)
    ratios = np.full(n, np.nan)
    alphas = np.full(n, np.nan)
    root = 1.0 / (m - 1)
    for i in range(n):
        if diag[i] == 0.0:
            if stop_at_zero:
                break
            raise ZeroDiagonal(i + 1)
        row = absrows[i]
        if i == 0:
            lam = row.sum()
        else:
            known = np.where(np.arange(n) < i, alphas, 0.0)
            weights = _trailing_product(known, m)
            block = first_block_mask(m, n, i + 1)
            lam = (row * weights).sum() + row[~block].sum()
        values[i] = lam
        ratios[i] = lam / diag[i]
        alphas[i] = ratios[i] ** root
    return LambdaVector(values, ratios, alphas)


def lambda_vector(A: DenseTensor) -> LambdaVector:
    """Forward recursion for Lambda_1, ..., Lambda_n.

    Row i weighs entries whose trailing indices all precede i by the product
    of (Lambda_j / |a_{j...j}|)^{1/(m-1)} over those indices, and takes the
    remaining off-diagonal entries at full absolute value.

    Raises :class:`ZeroDiagonal` if some a_{i...i} is zero.
    """
    return _recursion(A, stop_at_zero=False)


def partial_lambda_vector(A: DenseTensor) -> LambdaVector:
    """Like :func:`lambda_vector`, but rows from the first zero diagonal on are NaN."""
    return _recursion(A, stop_at_zero=True)


def is_nekrasov(A: DenseTensor, tol: float = 0.0) -> ClassVerdict:
    try:
        lam = lambda_vector(A)
    except ZeroDiagonal as exc:
        return fails("nekrasov", exc.index, "zero diagonal entry")
    diag = np.abs(A.diagonal())
    bad = np.flatnonzero(~(diag > lam.values + tol))
    details = {"lambda": lam.values, "margins": diag - lam.values}
    if bad.size:
        i = int(bad[0])
        return fails(
            "nekrasov", i + 1, "|a_ii| <= Lambda_i",
            diagonal=float(diag[i]), lambda_i=float(lam.values[i]), **details,
        )
    return holds("nekrasov", **details)


def is_nekrasov_z(A: DenseTensor, tol: float = 0.0, positive_diagonal: bool = False) -> ClassVerdict:
    """Nekrasov and Z; with ``positive_diagonal`` also every a_{i...i} > 0."""
    if not is_z_tensor(A):
        offending = np.flatnonzero((A.array > 0) & offdiag_mask(A))
        i = int(offending[0] // A.dim ** (A.order - 1)) + 1
        return fails("nekrasov_z", i, "positive off-diagonal entry (not a Z-tensor)")
    if positive_diagonal:
        nonpos = np.flatnonzero(A.diagonal() <= 0.0)
        if nonpos.size:
            return fails("nekrasov_z", int(nonpos[0]) + 1, "nonpositive diagonal entry")
    verdict = is_nekrasov(A, tol)
    if not verdict:
        return fails("nekrasov_z", verdict.index, verdict.reason, **verdict.details)
    return holds("nekrasov_z", **verdict.details)
