"""Randomized falsification search for the P and P0 tensor properties.

A is P when every v != 0 has a coordinate with v_i != 0 and
v_i (A v^{m-1})_i > 0.  The search minimises

    f(v) = max over {i : v_i != 0} of v_i (A v^{m-1})_i

over the unit sphere; any v with f(v) <= 0 disproves P.  A search that comes
back empty proves nothing, since deciding P is co-NP-hard.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .tensor import DenseTensor, contract_many

MASK_RTOL = 1e-9
FD_STEP = 1e-6


@dataclass(frozen=True)
class PVerdict:
    status: str  # "falsified" or "not_falsified"
    witness: np.ndarray | None
    worst_value: float
    samples_used: int
    even_order: bool
    kind: str = "P"

    @property
    def falsified(self) -> bool:
        return self.status == "falsified"

    @property
    def note(self) -> str:
        if self.falsified:
            return f"witness disproves the {self.kind} property"
        if not self.even_order:
            return "odd order: raw search result only, no certification implied"
        return "no counterexample found; this is not a proof"

    def to_dict(self) -> dict:
        return {
            "verdict": self.status,
            "property": self.kind,
            "witness": None if self.witness is None else self.witness.tolist(),
            "worst_value": self.worst_value,
            "samples_used": self.samples_used,
            "note": self.note,
        }


def objective_many(A: DenseTensor, V) -> np.ndarray:
    V = np.atleast_2d(np.asarray(V, dtype=np.float64))
    prods = V * contract_many(A, V)
    scale = np.abs(V).max(axis=1, keepdims=True)
    live = np.abs(V) > MASK_RTOL * scale
    vals = np.where(live, prods, -np.inf).max(axis=1)
    # The zero vector has no live coordinate; keep it out of any minimum.
    return np.where(scale[:, 0] > 0, vals, np.inf)


def objective(A: DenseTensor, v) -> float:
    """max_{i: v_i != 0} v_i (A v^{m-1})_i, with near-zero coordinates masked."""
    return float(objective_many(A, v)[0])


def _unit_rows(V: np.ndarray) -> np.ndarray:
    return V / np.linalg.norm(V, axis=1, keepdims=True)


def sign_patterns(n: int) -> np.ndarray:
    """All nonzero vectors in {-1, 0, 1}^n, normalised."""
    pats = np.array([p for p in itertools.product((-1.0, 0.0, 1.0), repeat=n) if any(p)])
    return _unit_rows(pats)


def _descend(A: DenseTensor, v: np.ndarray, fv: float, iters: int) -> tuple[np.ndarray, float, int]:
    n = A.dim
    evals = 0
    steps = 0.5 ** np.arange(30)
    for _ in range(iters):
        probes = v + FD_STEP * np.eye(n)
        g = (objective_many(A, probes) - fv) / FD_STEP
        evals += n
        g = g - (g @ v) * v
        gnorm = np.linalg.norm(g)
        if not np.isfinite(gnorm) or gnorm < 1e-14:
            break
        cands = _unit_rows(v - np.outer(steps, g / gnorm))
        fc = objective_many(A, cands)
        evals += len(steps)
        k = int(np.argmin(fc))
        if not fc[k] < fv:
            break
        v, fv = cands[k], float(fc[k])
    return v, fv, evals


def _search(A, budget, starts, seed, iters):
    if budget < 1 or starts < 1:
        raise ValueError("budget and starts must be >= 1")
    rng = np.random.default_rng(seed)
    n = A.dim
    layers = [_unit_rows(rng.standard_normal((budget, n)))]
    if n <= 4:
        layers.insert(0, sign_patterns(n))
    V = np.vstack(layers)
    f = objective_many(A, V)
    used = len(V)
    best = int(np.argmin(f))
    best_v, best_f = V[best], float(f[best])
    for k in np.argsort(f, kind="stable")[:starts]:
        v, fv, evals = _descend(A, V[k], float(f[k]), iters)
        used += evals
        if fv < best_f:
            best_v, best_f = v, fv
    return best_v, best_f, used


def p_falsify(A: DenseTensor, budget: int = 2000, starts: int = 8, tol: float = 0.0,
              seed: int = 42, iters: int = 200) -> PVerdict:
    """Search for v != 0 with v_i (A v^{m-1})_i <= -tol on every nonzero coordinate.

    ``budget`` random unit vectors are sampled (plus every {-1,0,1} sign
    pattern when n <= 4); the ``starts`` best seed finite-difference descent
    on the sphere.
    """
    v, fv, used = _search(A, budget, starts, seed, iters)
    hit = fv <= -tol
    return PVerdict("falsified" if hit else "not_falsified", v.copy() if hit else None, fv, used,
                    A.order % 2 == 0, "P")


def p0_falsify(A: DenseTensor, budget: int = 2000, starts: int = 8, tol: float = 0.0,
               seed: int = 42, iters: int = 200) -> PVerdict:
    """Like :func:`p_falsify` for P0: falsified only if f(v) < -tol."""
    v, fv, used = _search(A, budget, starts, seed, iters)
    hit = fv < -tol
    return PVerdict("falsified" if hit else "not_falsified", v.copy() if hit else None, fv, used,
                    A.order % 2 == 0, "P0")


def add_constant_rows(A: DenseTensor, c) -> DenseTensor:
    """A + C where every entry of row i of C equals c_i >= 0."""
    c = np.asarray(c, dtype=np.float64)
    if c.shape != (A.dim,):
        raise ValueError(f"need {A.dim} row constants, got shape {c.shape}")
    if np.any(c < 0):
        raise ValueError("row constants must be nonnegative")
    return A.with_array(A.array + c.reshape((A.dim,) + (1,) * (A.order - 1)))
