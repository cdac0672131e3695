"""Seeded random instance families used by the property and acceptance tests.

All generators take a ``numpy.random.Generator`` and draw off-diagonal
entries from uniform distributions on [-2, 2] (or [-2, 0] for Z families).
"""

from __future__ import annotations

import numpy as np

from .nekrasov import _recursion
from .tensor import DenseTensor, diagonal_mask, offdiag_row_sums


def random_tensor(rng: np.random.Generator, m: int, n: int, low: float = -2.0,
                  high: float = 2.0) -> DenseTensor:
    return DenseTensor(m, n, rng.uniform(low, high, n**m))


def _offdiag(rng, m, n, z: bool) -> np.ndarray:
    arr = rng.uniform(-2.0, 0.0 if z else 2.0, (n,) * m)
    arr[diagonal_mask(m, n)] = 0.0
    return arr


def _set_diag_from_lambda(rng, arr, factor, positive) -> np.ndarray:
    """Fill the diagonal row by row as factor * Lambda_i (Lambda_i ignores a_ii)."""
    m, n = arr.ndim, arr.shape[0]
    for i in range(n):
        arr[(i,) * m] = 1.0  # placeholder so the recursion can reach row i
        lam = _recursion(DenseTensor.from_array(arr), stop_at_zero=True).values[i]
        mag = max(lam, 1e-3) * factor()
        arr[(i,) * m] = mag if positive or rng.random() < 0.5 else -mag
    return arr


def random_nekrasov(rng: np.random.Generator, m: int, n: int, z: bool = False,
                    positive_diagonal: bool = False, slack=(1.05, 2.0)) -> DenseTensor:
    """|a_ii| = Lambda_i * U(slack); random diagonal signs unless positive_diagonal."""
    arr = _offdiag(rng, m, n, z)
    arr = _set_diag_from_lambda(rng, arr, lambda: rng.uniform(*slack), positive_diagonal)
    return DenseTensor.from_array(arr)


def random_nekrasov_z(rng: np.random.Generator, m: int, n: int) -> DenseTensor:
    return random_nekrasov(rng, m, n, z=True, positive_diagonal=True)


def random_sdd(rng: np.random.Generator, m: int, n: int, slack=(1.05, 2.0)) -> DenseTensor:
    arr = _offdiag(rng, m, n, z=False)
    A = DenseTensor.from_array(arr)
    mags = np.maximum(offdiag_row_sums(A), 1e-3) * rng.uniform(*slack, n)
    signs = np.where(rng.random(n) < 0.5, -1.0, 1.0)
    arr[diagonal_mask(m, n)] = mags * signs
    return DenseTensor.from_array(arr)


def random_constant_rows(rng: np.random.Generator, n: int, zero_prob: float = 0.2) -> np.ndarray:
    c = rng.uniform(0.0, 2.0, n)
    c[rng.random(n) < zero_prob] = 0.0
    return c


def random_b_nekrasov_candidate(rng: np.random.Generator, m: int, n: int) -> DenseTensor:
    """Members and near-members of the B-Nekrasov class.

    Half the draws are a Z-tensor whose diagonal sits near the Nekrasov
    threshold plus nonnegative constant rows; the other half have general
    entries in [-2, 2] with a boosted positive diagonal.
    """
    if rng.random() < 0.5:
        arr = _offdiag(rng, m, n, z=True)
        arr = _set_diag_from_lambda(rng, arr, lambda: rng.uniform(0.8, 1.5), positive=True)
        arr += random_constant_rows(rng, n).reshape((n,) + (1,) * (m - 1))
    else:
        arr = rng.uniform(-2.0, 2.0, (n,) * m)
        boost = rng.uniform(0.5, 1.5) * n ** (m - 1)
        arr[diagonal_mask(m, n)] = rng.uniform(0.5, 1.0, n) * boost
    return DenseTensor.from_array(arr)


def random_b_nekrasov(rng: np.random.Generator, m: int, n: int) -> DenseTensor:
    """Nekrasov Z-tensor with positive diagonal plus random constant rows.

    The splitting of the sum recovers a B+ that is at least as dominant as
    the Z part, so every draw is B-Nekrasov.
    """
    B = random_nekrasov_z(rng, m, n)
    c = random_constant_rows(rng, n)
    return B.with_array(B.array + c.reshape((n,) + (1,) * (m - 1)))


def q_with_negative(rng: np.random.Generator, n: int) -> np.ndarray:
    """q uniform in [-2, 2]^n with at least one negative component."""
    q = rng.uniform(-2.0, 2.0, n)
    if np.all(q >= 0):
        q[rng.integers(n)] = -rng.uniform(0.1, 2.0)
    return q
