"""Small tensor complementarity problems TCP(A, q).

Find v >= 0 with A v^{m-1} + q >= 0 and v . (A v^{m-1} + q) = 0.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NoSolutionFound
from .tensor import DenseTensor, contract_vector

log = logging.getLogger(__name__)

MAX_ENUM_DIM = 8


@dataclass(frozen=True)
class TCPInstance:
    a: DenseTensor
    q: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.q, dtype=np.float64)
        if q.shape != (self.a.dim,):
            raise DimensionMismatch(f"q must have length {self.a.dim}, got shape {q.shape}")
        object.__setattr__(self, "q", q)

    def map(self, v) -> np.ndarray:
        return contract_vector(self.a, v) + self.q


@dataclass(frozen=True)
class TCPSolution:
    v: np.ndarray
    support: tuple[int, ...]
    residual: float
    method: str

    def to_dict(self) -> dict:
        return {"v": self.v.tolist(), "support": list(self.support), "residual": self.residual,
                "method": self.method}


def residual(inst: TCPInstance, v) -> float:
    """||min(v, A v^{m-1} + q)||_inf; zero exactly at solutions."""
    v = np.asarray(v, dtype=np.float64)
    return float(np.abs(np.minimum(v, inst.map(v))).max())


def is_feasible(inst: TCPInstance, v, tol: float = 0.0, strict: bool = False) -> bool:
    v = np.asarray(v, dtype=np.float64)
    w = inst.map(v)
    if strict:
        return bool(np.all(v > tol) and np.all(w > tol))
    return bool(np.all(v >= -tol) and np.all(w >= -tol))


def _solution(inst: TCPInstance, v: np.ndarray, method: str) -> TCPSolution:
    support = tuple(int(i) + 1 for i in np.flatnonzero(v > 0))
    return TCPSolution(v, support, residual(inst, v), method)


def _newton(F, x0: np.ndarray, iters: int, target: float) -> np.ndarray:
    """Damped Newton with a central-difference Jacobian."""
    x = x0.copy()
    fx = F(x)
    norm = np.linalg.norm(fx)
    k = len(x)
    for _ in range(iters):
        if np.abs(fx).max() <= target:
            break
        J = np.empty((k, k))
        for j in range(k):
            h = 1e-7 * max(1.0, abs(x[j]))
            e = np.zeros(k)
            e[j] = h
            J[:, j] = (F(x + e) - F(x - e)) / (2 * h)
        try:
            d = np.linalg.solve(J, -fx)
        except np.linalg.LinAlgError:
            d = np.linalg.lstsq(J, -fx, rcond=None)[0]
        t = 1.0
        for _ in range(31):
            trial = x + t * d
            ft = F(trial)
            nt = np.linalg.norm(ft)
            if nt < norm:
                break
            t *= 0.5
        else:
            break
        x, fx, norm = trial, ft, nt
    return x


def _support_candidates(inst, S, tol, newton_iters, restarts, rng):
    n = inst.a.dim
    idx = np.array(S)

    def embed(x):
        v = np.zeros(n)
        v[idx] = x
        return v

    def F(x):
        return inst.map(embed(x))[idx]

    scale = max(1.0, float(np.abs(inst.q[idx]).max())) ** (1.0 / (inst.a.order - 1))
    starts = [np.ones(len(S))]
    starts += [rng.uniform(0.05, 2.0, len(S)) * scale for _ in range(restarts)]
    target = 1e-3 * tol
    for x0 in starts:
        x = _newton(F, x0, newton_iters, target)
        if not np.all(np.isfinite(x)):
            continue
        v = embed(x)
        if np.all(x > tol) and np.all(inst.map(v) >= -tol) and residual(inst, v) <= tol:
            yield v


def solve_support_enumeration(inst: TCPInstance, tol: float = 1e-8, newton_iters: int = 50,
                              restarts: int = 5, seed: int = 0, all_solutions: bool = False):
    """Enumerate supports S in order of size, then lexicographically.

    On each support solve (A v^{m-1} + q)_S = 0 with v = 0 off S and accept
    v when v_S > tol, A v^{m-1} + q >= -tol and the residual is <= tol.
    Returns the first accepted solution, or with ``all_solutions`` every
    one found (at most one per support).  Raises :class:`NoSolutionFound`.
    """
    n = inst.a.dim
    if n > MAX_ENUM_DIM:
        raise ValueError(f"support enumeration is limited to n <= {MAX_ENUM_DIM}, got {n}")
    rng = np.random.default_rng(seed)
    found = []
    zero = np.zeros(n)
    if np.all(inst.q >= -tol):
        sol = _solution(inst, zero, "enum")
        if not all_solutions:
            return sol
        found.append(sol)
    for size in range(1, n + 1):
        for S in itertools.combinations(range(n), size):
            for v in _support_candidates(inst, S, tol, newton_iters, restarts, rng):
                sol = _solution(inst, v, "enum")
                if not all_solutions:
                    return sol
                found.append(sol)
                break
    if not found:
        raise NoSolutionFound(f"no solution found over all {2 ** n} supports")
    return found


def solve_fixed_point(inst: TCPInstance, step: float = 0.05, max_iter: int = 100000,
                      tol: float = 1e-8, v0=None) -> TCPSolution:
    """Projected iteration v <- max(0, v - step * (A v^{m-1} + q)) from v0 (default 0).

    No convergence guarantee; raises :class:`NoConvergence`.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    v = np.zeros(inst.a.dim) if v0 is None else np.maximum(0.0, np.asarray(v0, dtype=np.float64))
    for _ in range(max_iter):
        w = inst.map(v)
        if not np.all(np.isfinite(w)):
            break
        if np.abs(np.minimum(v, w)).max() <= tol:
            return _solution(inst, v, "fixed-point")
        v = np.maximum(0.0, v - step * w)
    raise NoConvergence(f"projected iteration did not reach residual {tol} in {max_iter} steps")


def solve(inst: TCPInstance, method: str = "enum", tol: float = 1e-8, **kwargs) -> TCPSolution:
    if method == "enum":
        return solve_support_enumeration(inst, tol=tol, **kwargs)
    if method == "fixed-point":
        return solve_fixed_point(inst, tol=tol, **kwargs)
    raise ValueError(f"unknown method {method!r}")
