"""Bootstrap-permutation test for symmetry about the origin, plus Mardia's skewness test.

Procedure, per bootstrap replication j = 1..r:

1. permute the rows by a uniform rho (after an optional without-replacement
   subsample of size n');
2. omega_0 = optimal assignment cost between the first half and the negated
   second half;
3. Y = first half stacked on the negated second half;
4. for m random permutations of Y, omega_i = optimal assignment cost between
   its two halves;
5. p_j = #{omega_i > omega_0} / m  (or >= under the inclusive tie rule).

The reported p-value is the mean of the p_j. Costs are raw matching costs
(sums of d^p), identical in scale for omega_0 and omega_i.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass
from functools import partial
from typing import Optional

import numpy as np
from scipy import linalg, special

from ._parallel import pmap
from .assignment import assignment_cost
from .metric import MetricKind, pairwise
from .rng import substream
from .wasserstein import as_cloud, check_order


class TieRule(str, enum.Enum):
    STRICT = "strict"
    INCLUSIVE = "inclusive"


@dataclass(frozen=True)
class SymTestConfig:
    r: int = 1
    m_perms: int = 200
    p: int = 1
    metric: MetricKind = MetricKind.L1
    subsample: Optional[int] = None
    tie_rule: TieRule = TieRule.INCLUSIVE
    seed: int = 0
    center: bool = False

    def __post_init__(self):
        object.__setattr__(self, "metric", MetricKind.parse(self.metric))
        object.__setattr__(self, "tie_rule", TieRule(self.tie_rule))
        check_order(self.p)
        if self.r < 1 or self.m_perms < 1:
            raise ValueError("r and m_perms must be >= 1")
        if self.subsample is not None and self.subsample < 4:
            raise ValueError("subsample must be >= 4")

    def as_dict(self) -> dict:
        out = asdict(self)
        out["metric"] = self.metric.value
        out["tie_rule"] = self.tie_rule.value
        return out


@dataclass(frozen=True)
class SymmetryTestReport:
    p_value: float
    per_replication_p: tuple[float, ...]
    omega0_per_replication: tuple[float, ...]
    config: SymTestConfig

    def as_dict(self) -> dict:
        return {
            "p_value": self.p_value,
            "per_replication_p": list(self.per_replication_p),
            "omega0_per_replication": list(self.omega0_per_replication),
        }


def _replication(j: int, X, cfg: SymTestConfig) -> tuple[float, float]:
    rng = substream(cfg.seed, "symtest", j)
    n = X.shape[0]
    if cfg.subsample is not None:
        X = X[rng.choice(n, size=cfg.subsample, replace=False)]
        n = cfg.subsample
    h = n // 2
    rho = rng.permutation(n)
    Y = np.concatenate([X[rho[:h]], -X[rho[h:2 * h]]])
    # All omegas are sub-blocks of one pairwise cost matrix on Y.
    D = pairwise(Y, Y, cfg.metric)
    if cfg.p == 2:
        D = D * D
    omega0 = assignment_cost(D[:h, h:])
    exceed = 0
    for _ in range(cfg.m_perms):
        pi = rng.permutation(2 * h)
        omega = assignment_cost(D[np.ix_(pi[:h], pi[h:])])
        if omega > omega0 or (cfg.tie_rule is TieRule.INCLUSIVE and omega == omega0):
            exceed += 1
    return exceed / cfg.m_perms, omega0


def permutation_symmetry_test(X, cfg: SymTestConfig = SymTestConfig(), workers: int = 1) -> SymmetryTestReport:
    X = as_cloud(X)
    n = X.shape[0]
    if n < 4:
        raise ValueError("need at least four points")
    if cfg.subsample is not None and cfg.subsample > n:
        raise ValueError("subsample larger than the data set")
    if cfg.center:
        X = X - X.mean(axis=0)
    reps = pmap(partial(_replication, X=X, cfg=cfg), range(cfg.r), workers)
    ps = tuple(float(p) for p, _ in reps)
    return SymmetryTestReport(
        p_value=math.fsum(ps) / len(ps),
        per_replication_p=ps,
        omega0_per_replication=tuple(float(w) for _, w in reps),
        config=cfg,
    )


# --- Mardia ---------------------------------------------------------------


@dataclass(frozen=True)
class MardiaReport:
    statistic: float
    df: int
    p_value: float


def chi_squared_sf(x: float, df: int) -> float:
    """Upper tail of chi^2_df, i.e. the regularized upper incomplete gamma Q(df/2, x/2)."""
    if x < 0 or df < 1:
        raise ValueError("need x >= 0 and df >= 1")
    return float(special.gammaincc(df / 2.0, x / 2.0))


def _regularized_covariance(X: np.ndarray) -> np.ndarray:
    Xc = X - X.mean(axis=0)
    S = Xc.T @ Xc / X.shape[0]
    k = S.shape[0]
    return S + (1e-12 * np.trace(S) / k) * np.eye(k)


def _cho(S: np.ndarray):
    try:
        return linalg.cho_factor(S, lower=True)
    except linalg.LinAlgError:
        raise ValueError("degenerate covariance") from None


def covariance_inverse_apply(X, v) -> np.ndarray:
    """Solve S u = v for the biased (1/n), lightly regularized covariance S of X."""
    X = as_cloud(X)
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (X.shape[1],):
        raise ValueError("dimension mismatch")
    S = _regularized_covariance(X)
    if not np.trace(S) > 0:
        raise ValueError("degenerate covariance")
    return linalg.cho_solve(_cho(S), v)


def mardia_skewness_test(X) -> MardiaReport:
    """Mardia's multivariate skewness test, n * b_{1,k} / 6 ~ chi^2 with k(k+1)(k+2)/6 df."""
    X = as_cloud(X)
    n, k = X.shape
    if n <= k:
        raise ValueError("need more observations than dimensions")
    S = _regularized_covariance(X)
    if not np.trace(S) > 0:
        raise ValueError("degenerate covariance")
    Xc = X - X.mean(axis=0)
    G = Xc @ linalg.cho_solve(_cho(S), Xc.T)
    stat = float(np.sum(G ** 3)) / (6.0 * n)
    stat = max(stat, 0.0)
    df = k * (k + 1) * (k + 2) // 6
    return MardiaReport(stat, df, chi_squared_sf(stat, df))
