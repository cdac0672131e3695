"""Diagonal scaling of Nekrasov tensors and nonsingular M/H membership."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bnekrasov import decompose, is_b_nekrasov_definition
from .errors import HypothesisViolated, NoConvergence, NotNekrasov
from .nekrasov import is_nekrasov, lambda_vector
from .tensor import (
    DenseTensor,
    comparison_tensor,
    contract_vector,
    dominance_margins,
    identity_tensor,
    is_nonnegative,
    is_z_tensor,
    scale_columns,
)
from .verdict import ClassVerdict, fails, holds, not_applicable


@dataclass(frozen=True)
class ScalingCertificate:
    w: np.ndarray
    epsilon: float
    margins: np.ndarray

    @property
    def valid(self) -> bool:
        return bool(np.all(self.w > 0) and np.all(self.w < 1) and np.all(self.margins > 0))

    def to_dict(self) -> dict:
        return {"w": self.w.tolist(), "epsilon": self.epsilon, "margins": self.margins.tolist(),
                "valid": self.valid}


def has_trailing_nonzero(B: DenseTensor, i: int, strict: bool = False) -> bool:
    """Does row ``i`` hold a nonzero entry whose trailing indices go past ``i``?

    By default one component > i suffices; ``strict=True`` demands that all
    of i_2, ..., i_m exceed i.
    """
    if not 1 <= i <= B.dim - 1:
        raise IndexError(f"index {i} outside [1, {B.dim - 1}]")
    row = B.row(i)
    comps = np.indices(row.shape)  # 0-based, so "> i" in 1-based is ">= i" here
    beyond = comps >= i
    where = beyond.all(axis=0) if strict else beyond.any(axis=0)
    return bool(np.any(row[where] != 0.0))


def build_w(B: DenseTensor, eps_fraction: float = 0.5, strict_hypothesis: bool = False,
            tol: float = 0.0) -> ScalingCertificate:
    """Positive diagonal W with B W strictly diagonally dominant.

    w_i = (Lambda_i / |b_{i...i}|)^{1/(m-1)} for every i, and the last
    weight is raised by epsilon = eps_fraction * (1 - w_n), which keeps it
    below 1.
    """
    if not 0.0 < eps_fraction < 1.0:
        raise ValueError("eps_fraction must lie in (0, 1)")
    verdict = is_nekrasov(B, tol)
    if not verdict:
        raise NotNekrasov(verdict.index, f"tensor is not Nekrasov at row {verdict.index}: {verdict.reason}")
    for i in range(1, B.dim):
        if not has_trailing_nonzero(B, i, strict=strict_hypothesis):
            raise HypothesisViolated(i)
    lam = lambda_vector(B)
    w = lam.alphas.copy()
    epsilon = eps_fraction * (1.0 - w[-1])
    w[-1] += epsilon
    margins = dominance_margins(scale_columns(B, w))
    return ScalingCertificate(w, float(epsilon), margins)


def build_w_b_nekrasov(A: DenseTensor, eps_fraction: float = 0.5, tol: float = 0.0) -> ScalingCertificate:
    """Scaling certificate for B+ of a B-Nekrasov tensor; B+ W is then an SDD Z-tensor."""
    verdict = is_b_nekrasov_definition(A, tol)
    if not verdict:
        raise NotNekrasov(verdict.index, f"tensor is not B-Nekrasov at row {verdict.index}: {verdict.reason}")
    return build_w(decompose(A).bplus, eps_fraction, tol=tol)


def perron_bracket(B: DenseTensor, tol: float = 1e-10, max_iter: int = 20000):
    """Collatz-Wielandt bracket (lo, hi) on rho(B) for a nonnegative tensor.

    Power iteration x <- (B x^{m-1})^{[1/(m-1)]} from the all-ones vector on
    B + shift * ones, shift = 1e-12 * max entry, which makes the iterate
    positive.  Stops when hi - lo < tol * max(1, hi).
    """
    if not is_nonnegative(B):
        raise ValueError("spectral radius iteration needs a nonnegative tensor")
    top = float(B.entries.max())
    if top == 0.0:
        return 0.0, 0.0
    shifted = B + 1e-12 * top
    root = 1.0 / (B.order - 1)
    x = np.ones(B.dim)
    lo = hi = np.nan
    for _ in range(max_iter):
        y = contract_vector(shifted, x)
        q = y / x ** (B.order - 1)
        lo, hi = float(q.min()), float(q.max())
        if hi - lo < tol * max(1.0, hi):
            return lo, hi
        x = y**root
        x /= x.max()
    raise NoConvergence(f"power iteration did not converge in {max_iter} steps (bracket [{lo}, {hi}])")


def spectral_radius_nonneg(B: DenseTensor, tol: float = 1e-10, max_iter: int = 20000) -> float:
    lo, hi = perron_bracket(B, tol, max_iter)
    return 0.5 * (lo + hi)


def is_nonsingular_m(A: DenseTensor, tol: float = 0.0, rho_tol: float = 1e-10) -> ClassVerdict:
    """A = sI - B with s = max diagonal; holds iff s exceeds the upper bound on rho(B) by tol."""
    if not is_z_tensor(A):
        return fails("nonsingular_m", reason="not a Z-tensor")
    s = float(A.diagonal().max())
    B = identity_tensor(A.order, A.dim) * s - A
    lo, hi = perron_bracket(B, rho_tol)
    details = {"s": s, "rho": 0.5 * (lo + hi), "rho_bracket": [lo, hi]}
    if s > hi + tol:
        return holds("nonsingular_m", **details)
    return fails("nonsingular_m", reason="s <= rho(sI - A)", **details)


def is_nonsingular_h(A: DenseTensor, tol: float = 0.0, rho_tol: float = 1e-10) -> ClassVerdict:
    """Comparison tensor is a nonsingular M-tensor.

    For Nekrasov inputs that admit :func:`build_w`, the scaling certificate
    of the comparison tensor is attached as a second witness, and
    ``certificate_agrees`` records whether both routes say the same.
    """
    M = comparison_tensor(A)
    verdict = is_nonsingular_m(M, tol, rho_tol)
    details = dict(verdict.details)
    try:
        cert = build_w(M)
    except (NotNekrasov, HypothesisViolated):
        cert = None
    if cert is not None:
        details["scaling_certificate"] = cert
        details["certificate_agrees"] = cert.valid == verdict.holds
    if verdict:
        return holds("nonsingular_h", **details)
    return fails("nonsingular_h", reason=verdict.reason, **details)


def c_zero_implies_h(A: DenseTensor, tol: float = 0.0) -> ClassVerdict:
    """H-membership for B-Nekrasov tensors whose constant-row part vanishes."""
    if not is_b_nekrasov_definition(A, tol):
        return not_applicable("c_zero_implies_h", "not B-Nekrasov")
    if not decompose(A).c_is_zero:
        return not_applicable("c_zero_implies_h", "constant-row part C is nonzero")
    verdict = is_nonsingular_h(A, tol)
    return ClassVerdict("c_zero_implies_h", verdict.status, verdict.index, verdict.reason, verdict.details)
