"""Dense square linear assignment.

The solver is the shortest-augmenting-path form of the Hungarian method
with row/column dual potentials (Jonker-Volgenant style), O(m^3) on a
dense real cost matrix. Comparisons are exact floating point; the optimal
*cost* is deterministic even when several permutations attain it.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

import numba
import numpy as np

ORACLE_MAX_SIZE = 9


@dataclass(frozen=True)
class AssignmentResult:
    permutation: tuple[int, ...]
    total_cost: float


def _check_cost(cost) -> np.ndarray:
    try:
        c = np.asarray(cost, dtype=np.float64)
    except (TypeError, ValueError):
        raise ValueError("invalid cost matrix") from None
    if c.ndim != 2 or c.shape[0] != c.shape[1] or c.shape[0] < 1:
        raise ValueError("invalid cost matrix")
    if not np.all(np.isfinite(c)) or np.any(c < 0):
        raise ValueError("invalid cost matrix")
    return np.ascontiguousarray(c)


@numba.njit(cache=True, nogil=True)
def _lap(cost):
    m = cost.shape[0]
    inf = np.inf
    u = np.zeros(m + 1)
    v = np.zeros(m + 1)
    # col_owner[j] = row (1-based) matched to column j; column 0 is the virtual root
    col_owner = np.zeros(m + 1, dtype=np.int64)
    way = np.zeros(m + 1, dtype=np.int64)
    minv = np.empty(m + 1)
    used = np.empty(m + 1, dtype=np.bool_)
    for i in range(1, m + 1):
        col_owner[0] = i
        j0 = 0
        minv[:] = inf
        used[:] = False
        while True:
            used[j0] = True
            i0 = col_owner[j0]
            delta = inf
            j1 = 0
            for j in range(1, m + 1):
                if not used[j]:
                    cur = cost[i0 - 1, j - 1] - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(m + 1):
                if used[j]:
                    u[col_owner[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if col_owner[j0] == 0:
                break
        while True:
            j1 = way[j0]
            col_owner[j0] = col_owner[j1]
            j0 = j1
            if j0 == 0:
                break
    perm = np.empty(m, dtype=np.int64)
    for j in range(1, m + 1):
        perm[col_owner[j] - 1] = j - 1
    return perm


def _matched_cost(cost: np.ndarray, perm: np.ndarray) -> float:
    # correctly rounded, so transposed problems give bit-identical totals
    return math.fsum(cost[np.arange(perm.shape[0]), perm])


def assignment_cost(cost: np.ndarray) -> float:
    """Optimal total cost only; no validation. Hot path for the samplers."""
    c = np.ascontiguousarray(cost, dtype=np.float64)
    return _matched_cost(c, _lap(c))


def solve_assignment(cost) -> AssignmentResult:
    c = _check_cost(cost)
    perm = _lap(c)
    return AssignmentResult(tuple(int(j) for j in perm), _matched_cost(c, perm))


def brute_force_assignment(cost) -> AssignmentResult:
    """Exhaustive search over all m! permutations (test oracle)."""
    c = _check_cost(cost)
    m = c.shape[0]
    if m > ORACLE_MAX_SIZE:
        raise ValueError("instance too large for oracle")
    perms = _all_permutations(m)
    totals = c[np.arange(m), perms].sum(axis=1)
    best = perms[int(np.argmin(totals))]
    return AssignmentResult(tuple(int(j) for j in best), _matched_cost(c, best))


@functools.lru_cache(maxsize=ORACLE_MAX_SIZE)
def _all_permutations(m: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(m))), dtype=np.int64).reshape(-1, m)
