"""Empirical Wasserstein-p distances between equal-size point clouds."""

from __future__ import annotations

import numpy as np

from .assignment import assignment_cost
from .metric import MetricKind, pairwise

SUPPORTED_ORDERS = (1, 2)


def as_cloud(X) -> np.ndarray:
    """Validate and coerce to an (n, d) float64 array."""
    a = np.asarray(X, dtype=np.float64)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError("point cloud must be a non-empty (n, d) array")
    if not np.all(np.isfinite(a)):
        raise ValueError("non-finite coordinate")
    return a


def check_order(p) -> int:
    if p not in SUPPORTED_ORDERS:
        raise ValueError(f"Wasserstein order must be 1 or 2, got {p!r}")
    return int(p)


def cost_matrix(X: np.ndarray, Y: np.ndarray, p: int, metric) -> np.ndarray:
    D = pairwise(X, Y, metric)
    return D if p == 1 else D * D


def _wasserstein(X: np.ndarray, Y: np.ndarray, p: int, metric) -> float:
    total = assignment_cost(cost_matrix(X, Y, p, metric))
    mean = max(total, 0.0) / X.shape[0]
    return mean if p == 1 else float(np.sqrt(mean))


def empirical_wasserstein(X, Y, p: int = 2, metric: MetricKind | str = "l2") -> float:
    X, Y = as_cloud(X), as_cloud(Y)
    p = check_order(p)
    metric = MetricKind.parse(metric)
    if X.shape[0] != Y.shape[0]:
        raise ValueError("point clouds must have the same size")
    if X.shape[1] != Y.shape[1]:
        raise ValueError("dimension mismatch")
    # fixed orientation makes the result bit-symmetric in its arguments
    if X.tobytes() > Y.tobytes():
        X, Y = Y, X
    return _wasserstein(X, Y, p, metric)


def split_halves(X: np.ndarray, rho) -> tuple[np.ndarray, np.ndarray]:
    """First and second half of ``X[rho]``; an odd trailing point is dropped."""
    n = X.shape[0]
    if n < 2:
        raise ValueError("need at least two points")
    rho = np.asarray(rho, dtype=np.int64)
    if rho.shape != (n,) or not np.array_equal(np.sort(rho), np.arange(n)):
        raise ValueError("rho must be a permutation of range(n)")
    h = n // 2
    return X[rho[:h]], X[rho[h:2 * h]]


def reflection_distance_split(X, rho, p: int = 2, metric: MetricKind | str = "l2") -> float:
    """W_p between the first half of ``X[rho]`` and the negated second half."""
    X = as_cloud(X)
    p = check_order(p)
    A, B = split_halves(X, rho)
    return _wasserstein(A, -B, p, MetricKind.parse(metric))


def sorted_1d_wasserstein(x, y, p: int = 2) -> float:
    """Monotone-coupling W_p on the real line (independent oracle)."""
    x = np.sort(np.asarray(x, dtype=np.float64).ravel())
    y = np.sort(np.asarray(y, dtype=np.float64).ravel())
    p = check_order(p)
    if x.size != y.size or x.size < 1:
        raise ValueError("samples must have equal, nonzero length")
    gaps = np.abs(x - y) ** p
    return float(np.mean(gaps) ** (1.0 / p))
