"""Norm-induced ground metrics on R^d."""

from __future__ import annotations

import enum

import numpy as np


class MetricKind(str, enum.Enum):
    L1 = "l1"
    L2 = "l2"
    LINF = "linf"

    @classmethod
    def parse(cls, value: "MetricKind | str") -> "MetricKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown metric {value!r}; expected one of l1, l2, linf") from None


def as_vector(x) -> np.ndarray:
    v = np.asarray(x, dtype=np.float64)
    if v.ndim == 0:
        v = v.reshape(1)
    if v.ndim != 1 or v.size < 1:
        raise ValueError("vector must be one-dimensional with d >= 1")
    if not np.all(np.isfinite(v)):
        raise ValueError("non-finite coordinate")
    return v


def norm(v: np.ndarray, metric: MetricKind | str, axis: int = -1) -> np.ndarray:
    """Vector norm along ``axis`` for the given metric kind."""
    metric = MetricKind.parse(metric)
    a = np.abs(v)
    if metric is MetricKind.L1:
        return a.sum(axis=axis)
    if metric is MetricKind.LINF:
        return a.max(axis=axis)
    # scale by the largest coordinate so tiny or huge inputs neither under- nor overflow
    top = a.max(axis=axis, keepdims=True)
    safe = np.where(top > 0, top, 1.0)
    r = a / safe
    return np.squeeze(top, axis=axis) * np.sqrt((r * r).sum(axis=axis))


def distance(x, y, metric: MetricKind | str) -> float:
    x = as_vector(x)
    y = as_vector(y)
    if x.shape != y.shape:
        raise ValueError("dimension mismatch")
    return float(norm(x - y, metric))


def pairwise(X: np.ndarray, Y: np.ndarray, metric: MetricKind | str) -> np.ndarray:
    """Matrix of distances ``D[i, j] = ||X[i] - Y[j]||``."""
    if X.shape[1] != Y.shape[1]:
        raise ValueError("dimension mismatch")
    return norm(X[:, None, :] - Y[None, :, :], metric)
