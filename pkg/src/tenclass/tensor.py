"""Dense real tensors of order m and dimension n.

Entries are stored flat in lexicographic order over (i_1, ..., i_m), so the
first index is the slowest.  Multi-indices are 1-based at the public API
boundary and 0-based internally.
"""

from __future__ import annotations

import os
from collections.abc import Sequence

import numpy as np

from .errors import DimensionMismatch, TensorTooLarge

DEFAULT_MAX_ENTRIES = 10**7


def max_entries() -> int:
    """Cap on n**m, overridable through ``TENCLASS_MAX_ENTRIES``."""
    raw = os.environ.get("TENCLASS_MAX_ENTRIES")
    if raw is None:
        return DEFAULT_MAX_ENTRIES
    return int(raw)


class DenseTensor:
    """Immutable order-``m``, dimension-``n`` real tensor.

    >>> A = identity_tensor(3, 2)
    >>> A[1, 1, 1], A[1, 2, 1]
    (1.0, 0.0)
    """

    __slots__ = ("_order", "_dim", "_data")

    def __init__(self, order: int, dim: int, entries):
        order = int(order)
        dim = int(dim)
        if order < 2:
            raise ValueError(f"order must be >= 2, got {order}")
        if dim < 1:
            raise ValueError(f"dim must be >= 1, got {dim}")
        size = dim**order
        if size > max_entries():
            raise TensorTooLarge(f"n**m = {size} exceeds the cap of {max_entries()} entries")
        data = np.array(entries, dtype=np.float64).reshape(-1)
        if data.size != size:
            raise DimensionMismatch(f"expected {size} entries for order {order}, dim {dim}; got {data.size}")
        if not np.all(np.isfinite(data)):
            raise ValueError("tensor entries must be finite")
        data.flags.writeable = False
        self._order = order
        self._dim = dim
        self._data = data

    @classmethod
    def from_array(cls, array) -> DenseTensor:
        arr = np.asarray(array, dtype=np.float64)
        if arr.ndim < 2 or len(set(arr.shape)) != 1:
            raise DimensionMismatch(f"expected a hypercubic array, got shape {arr.shape}")
        return cls(arr.ndim, arr.shape[0], arr)

    @classmethod
    def zeros(cls, order: int, dim: int) -> DenseTensor:
        return cls(order, dim, np.zeros(dim**order))

    @property
    def order(self) -> int:
        return self._order

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def entries(self) -> np.ndarray:
        """Read-only flat view, lexicographic."""
        return self._data

    @property
    def array(self) -> np.ndarray:
        """Read-only view with shape ``(n,) * m``."""
        return self._data.reshape((self._dim,) * self._order)

    @property
    def shape(self) -> tuple[int, ...]:
        return (self._dim,) * self._order

    def __getitem__(self, index: Sequence[int]) -> float:
        return float(self._data[rank(index, self._dim)])

    def row(self, i: int) -> np.ndarray:
        """Row subtensor R_i as a read-only array of shape ``(n,) * (m - 1)``."""
        _check_index(i, self._dim)
        return self.array[i - 1]

    def diagonal(self) -> np.ndarray:
        return self._data[diagonal_offsets(self._order, self._dim)].copy()

    def with_array(self, array) -> DenseTensor:
        return DenseTensor(self._order, self._dim, array)

    def _coerce(self, other) -> np.ndarray | float:
        if isinstance(other, DenseTensor):
            if other.shape != self.shape:
                raise DimensionMismatch(f"shape {other.shape} does not match {self.shape}")
            return other._data
        return float(other)

    def __add__(self, other) -> DenseTensor:
        return self.with_array(self._data + self._coerce(other))

    def __sub__(self, other) -> DenseTensor:
        return self.with_array(self._data - self._coerce(other))

    def __mul__(self, scalar) -> DenseTensor:
        return self.with_array(self._data * float(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> DenseTensor:
        return self.with_array(-self._data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DenseTensor):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._data, other._data))

    __hash__ = None

    def __repr__(self) -> str:
        return f"DenseTensor(order={self._order}, dim={self._dim})"


def _check_index(i: int, n: int) -> None:
    if not 1 <= i <= n:
        raise IndexError(f"index {i} outside [1, {n}]")


def rank(index: Sequence[int], n: int) -> int:
    """0-based lexicographic offset of a 1-based multi-index."""
    r = 0
    for c in index:
        _check_index(int(c), n)
        r = r * n + (int(c) - 1)
    return r


def unrank(offset: int, n: int, length: int) -> tuple[int, ...]:
    """Inverse of :func:`rank` for multi-indices of the given length."""
    if not 0 <= offset < n**length:
        raise IndexError(f"offset {offset} outside [0, {n ** length})")
    comps = []
    for _ in range(length):
        offset, c = divmod(offset, n)
        comps.append(c + 1)
    return tuple(reversed(comps))


def diagonal_offsets(order: int, dim: int) -> np.ndarray:
    stride = sum(dim**k for k in range(order))
    return np.arange(dim) * stride


def diagonal_mask(order: int, dim: int) -> np.ndarray:
    """Boolean array of shape ``(n,) * m``, true on (i, ..., i)."""
    mask = np.zeros(dim**order, dtype=bool)
    mask[diagonal_offsets(order, dim)] = True
    return mask.reshape((dim,) * order)


def identity_tensor(order: int, dim: int) -> DenseTensor:
    data = np.zeros(dim**order)
    data[diagonal_offsets(order, dim)] = 1.0
    return DenseTensor(order, dim, data)


def _as_vector(v, n: int) -> np.ndarray:
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (n,):
        raise DimensionMismatch(f"vector of length {n} expected, got shape {v.shape}")
    return v


def contract_vector(A: DenseTensor, v) -> np.ndarray:
    """(A v^{m-1})_i = sum over i_2..i_m of a_{i i_2...i_m} v_{i_2} ... v_{i_m}."""
    v = _as_vector(v, A.dim)
    out = A.array
    for _ in range(A.order - 1):
        out = out @ v
    return np.asarray(out, dtype=np.float64)


def contract_many(A: DenseTensor, V) -> np.ndarray:
    """Row-wise :func:`contract_vector` for a batch ``V`` of shape (k, n)."""
    V = np.atleast_2d(np.asarray(V, dtype=np.float64))
    if V.shape[1] != A.dim:
        raise DimensionMismatch(f"vectors of length {A.dim} expected, got shape {V.shape}")
    k = V.shape[0]
    # Kronecker power rows, i_2 slowest, matching the flat layout of each row.
    P = V
    for _ in range(A.order - 2):
        P = (P[:, :, None] * V[:, None, :]).reshape(k, -1)
    return P @ A.entries.reshape(A.dim, -1).T


def polyval(A: DenseTensor, v) -> float:
    """A v^m, the homogeneous form evaluated at v."""
    v = _as_vector(v, A.dim)
    return float(v @ contract_vector(A, v))


def offdiag_row_sums(A: DenseTensor) -> np.ndarray:
    """R_i(A) for every row: absolute sum of the n**(m-1) - 1 off-diagonal entries."""
    absval = np.abs(A.array)
    absval = np.where(diagonal_mask(A.order, A.dim), 0.0, absval)
    return absval.reshape(A.dim, -1).sum(axis=1)


def offdiag_row_sum(A: DenseTensor, i: int) -> float:
    _check_index(i, A.dim)
    return float(offdiag_row_sums(A)[i - 1])


def offdiag_mask(A: DenseTensor) -> np.ndarray:
    return ~diagonal_mask(A.order, A.dim)


def comparison_tensor(A: DenseTensor) -> DenseTensor:
    absval = np.abs(A.array)
    return A.with_array(np.where(diagonal_mask(A.order, A.dim), absval, -absval))


def _trailing_product(d: np.ndarray, order: int) -> np.ndarray:
    """Array of shape ``(n,) * (order - 1)`` holding d_{i_2} * ... * d_{i_m}."""
    prod = np.ones(())
    for _ in range(order - 1):
        prod = np.multiply.outer(prod, d)
    return prod


def scale_columns(A: DenseTensor, d) -> DenseTensor:
    """Tensor with entries a_{i i_2...i_m} d_{i_2} ... d_{i_m} (the product A D)."""
    d = _as_vector(d, A.dim)
    if np.any(d <= 0):
        raise ValueError("scaling vector must be strictly positive")
    return A.with_array(A.array * _trailing_product(d, A.order))


def is_z_tensor(A: DenseTensor) -> bool:
    return bool(np.all(A.array[offdiag_mask(A)] <= 0.0))


def is_nonnegative(A: DenseTensor) -> bool:
    return bool(np.all(A.entries >= 0.0))


def is_diag_dominant(A: DenseTensor, strict: bool = True, tol: float = 0.0) -> bool:
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    diag = np.abs(A.diagonal())
    R = offdiag_row_sums(A)
    if strict:
        return bool(np.all(diag > R + tol))
    return bool(np.all(diag >= R - tol))


def dominance_margins(A: DenseTensor) -> np.ndarray:
    """|a_{i...i}| - R_i(A) per row."""
    return np.abs(A.diagonal()) - offdiag_row_sums(A)


def has_positive_diagonal(A: DenseTensor) -> bool:
    return bool(np.all(A.diagonal() > 0.0))
