"""Bootstrap estimates of the empirical reflection distance E W_p(mu_n, mu_n^-)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import partial

import numpy as np

from ._parallel import pmap
from .metric import MetricKind, pairwise
from .rng import substream
from .wasserstein import _wasserstein, as_cloud, check_order, split_halves

DEFAULT_REPLICATIONS = 8


@dataclass(frozen=True)
class BootstrapConfig:
    m: int
    r: int = DEFAULT_REPLICATIONS
    p: int = 2
    metric: MetricKind = MetricKind.L2
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "metric", MetricKind.parse(self.metric))
        check_order(self.p)
        if self.m < 1 or self.r < 1:
            raise ValueError("m and r must be >= 1")


@dataclass(frozen=True)
class BootstrapEstimate:
    mean: float
    per_replication: tuple[float, ...]
    empirical_variance: float

    @classmethod
    def from_values(cls, values) -> "BootstrapEstimate":
        vals = tuple(float(v) for v in values)
        r = len(vals)
        mean = math.fsum(vals) / r
        var = math.fsum((v - mean) ** 2 for v in vals) / (r - 1) if r > 1 else 0.0
        return cls(mean, vals, var)


def seed_from(rng: np.random.Generator) -> int:
    """Draw a child seed so nested estimators keep their own substreams."""
    return int(rng.integers(0, 2**63))


def _bootstrap_rep(k: int, X, m, p, metric, seed) -> float:
    rng = substream(seed, "bootstrap", k)
    n = X.shape[0]
    Y = X[rng.integers(0, n, size=m)]
    Z = X[rng.integers(0, n, size=m)]
    return _wasserstein(Y, -Z, p, metric)


def bootstrap_reflection_estimate(X, cfg: BootstrapConfig, workers: int = 1) -> BootstrapEstimate:
    """Resample two size-m sets with replacement and match one to the negated other."""
    X = as_cloud(X)
    fn = partial(_bootstrap_rep, X=X, m=cfg.m, p=cfg.p, metric=cfg.metric, seed=cfg.seed)
    return BootstrapEstimate.from_values(pmap(fn, range(cfg.r), workers))


def _split_rep(k: int, X, p, metric, seed) -> float:
    rho = substream(seed, "split", k).permutation(X.shape[0])
    A, B = split_halves(X, rho)
    return _wasserstein(A, -B, p, metric)


def split_half_reflection_estimate(
    X,
    r: int = DEFAULT_REPLICATIONS,
    p: int = 2,
    metric: MetricKind | str = MetricKind.L2,
    seed: int = 0,
    workers: int = 1,
) -> BootstrapEstimate:
    """Average of reflection distances over ``r`` random half splits of X."""
    X = as_cloud(X)
    p = check_order(p)
    if X.shape[0] < 2:
        raise ValueError("need at least two points")
    if r < 1:
        raise ValueError("r must be >= 1")
    fn = partial(_split_rep, X=X, p=p, metric=MetricKind.parse(metric), seed=seed)
    return BootstrapEstimate.from_values(pmap(fn, range(r), workers))


def reflection_cost_range(X, metric: MetricKind | str = MetricKind.L2) -> float:
    """max - min of d(x_i, -x_j) over the observed cloud."""
    X = as_cloud(X)
    D = pairwise(X, -X, metric)
    return float(D.max() - D.min())


def bootstrap_variance_bound(X, m: int, metric: MetricKind | str = MetricKind.L2) -> float:
    """Bounded-differences variance bound C^2 / (2m) for the p=1 bootstrap value.

    Each of the 2m resampled points moves the matched average by at most C/m,
    and Var <= (1/4) * sum c_i^2.
    """
    C = reflection_cost_range(X, metric)
    return C * C / (2.0 * m)
