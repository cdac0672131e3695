"""Brute-force reference implementations, written straight from the definitions.

Nothing here imports the vectorised code paths under test.
"""

import itertools

import numpy as np


def naive_contract(arr, v):
    """(A v^{m-1})_i by explicit nested loops over (i_2, ..., i_m)."""
    m, n = arr.ndim, arr.shape[0]
    out = np.zeros(n)
    for i in range(n):
        total = 0.0
        for tail in itertools.product(range(n), repeat=m - 1):
            term = arr[(i,) + tail]
            for j in tail:
                term *= v[j]
            total += term
        out[i] = total
    return out


def naive_abs_contract(arr, v):
    return naive_contract(np.abs(arr), np.abs(v))


def naive_row_sum(arr, i):
    m, n = arr.ndim, arr.shape[0]
    return sum(abs(arr[(i,) + tail]) for tail in itertools.product(range(n), repeat=m - 1)
               if tail != (i,) * (m - 1))


def naive_lambda(arr):
    """Nekrasov recursion with explicit tuple loops (0-based rows)."""
    m, n = arr.ndim, arr.shape[0]
    lam = np.zeros(n)
    for i in range(n):
        total = 0.0
        for tail in itertools.product(range(n), repeat=m - 1):
            if tail == (i,) * (m - 1):
                continue
            entry = abs(arr[(i,) + tail])
            if i > 0 and all(j < i for j in tail):
                for j in tail:
                    entry *= (lam[j] / abs(arr[(j,) * m])) ** (1.0 / (m - 1))
            total += entry
        lam[i] = total
    return lam


def matrix_nekrasov_lambda(M):
    """Lambda_i for a matrix: sum_{j<i} |a_ij| Lambda_j/|a_jj| + sum_{j>i} |a_ij|."""
    n = M.shape[0]
    lam = np.zeros(n)
    for i in range(n):
        lam[i] = sum(abs(M[i, j]) * lam[j] / abs(M[j, j]) for j in range(i)) + \
            sum(abs(M[i, j]) for j in range(i + 1, n))
    return lam


def matrix_is_nekrasov(M):
    return all(abs(M[i, i]) > lam for i, lam in enumerate(matrix_nekrasov_lambda(M)))


def matrix_is_z(M):
    off = M - np.diag(np.diag(M))
    return bool(np.all(off <= 0))


def matrix_is_sdd(M):
    n = M.shape[0]
    return all(abs(M[i, i]) > sum(abs(M[i, j]) for j in range(n) if j != i) for i in range(n))


def matrix_b_nekrasov(M):
    """B+ = M - r e^T with r_i = max(0, max_{j != i} a_ij); B+ Nekrasov Z, positive diagonal."""
    n = M.shape[0]
    r = np.array([max(0.0, max(M[i, j] for j in range(n) if j != i)) for i in range(n)])
    Bp = M - r[:, None]
    return bool(np.all(np.diag(Bp) > 0) and matrix_is_z(Bp) and matrix_is_nekrasov(Bp))


def matrix_is_nonsingular_h(M):
    """Comparison matrix is a nonsingular M-matrix: all eigenvalues have positive real part."""
    C = -np.abs(M)
    np.fill_diagonal(C, np.abs(np.diag(M)))
    return bool(np.linalg.eigvals(C).real.min() > 0)


def matrix_is_p(M):
    """Every principal minor positive."""
    n = M.shape[0]
    for k in range(1, n + 1):
        for S in itertools.combinations(range(n), k):
            if np.linalg.det(M[np.ix_(S, S)]) <= 0:
                return False
    return True
