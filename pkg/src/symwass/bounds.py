"""Classical vs Wasserstein-corrected symmetrization bounds.

For a sample X_1..X_n with mean mu the quantities compared are

    lhs = n^{-1/2} E || sum (X_i - mu) ||
    R_n = n^{-1/2} E || sum eps_i (X_i - mu) ||
    C_n = W_2(mu_n, mu_n^-) / sqrt(2)

with old bound 2 R_n and new bound R_n + C_n. The module also carries the
confidence radius and the l_inf Nemirovski comparison built on the same
correction term.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, replace
from functools import partial
from typing import Optional, Sequence

import numpy as np

from ._parallel import pmap
from .bootstrap import (
    DEFAULT_REPLICATIONS,
    BootstrapConfig,
    bootstrap_reflection_estimate,
    seed_from,
    split_half_reflection_estimate,
)
from .metric import MetricKind, norm
from .rng import as_generator, substream
from .simgen import GeneratorSpec
from .wasserstein import as_cloud, check_order

DEFAULT_SIGN_DRAWS = 100
NEMIROVSKI_W2_RESAMPLE = 5


class Estimator(str, enum.Enum):
    SPLIT_HALF = "split"
    BOOTSTRAP = "bootstrap"


@dataclass(frozen=True)
class BoundConfig:
    metric: MetricKind = MetricKind.L2
    p: int = 2
    estimator: Estimator = Estimator.SPLIT_HALF
    estimator_r: int = DEFAULT_REPLICATIONS
    m: Optional[int] = None  # bootstrap resample size; None means n
    num_sign_draws: int = DEFAULT_SIGN_DRAWS
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "metric", MetricKind.parse(self.metric))
        object.__setattr__(self, "estimator", Estimator(self.estimator))
        check_order(self.p)
        if self.num_sign_draws < 1 or self.estimator_r < 1:
            raise ValueError("num_sign_draws and estimator_r must be >= 1")

    def as_dict(self) -> dict:
        out = asdict(self)
        out["metric"] = self.metric.value
        out["estimator"] = self.estimator.value
        return out


@dataclass(frozen=True)
class BoundReport:
    n: int
    lhs: float
    R_n: float
    C_n: float
    old_bound: float
    new_bound: float
    mc_std_error: float
    reps: int = 1
    warning: Optional[str] = None

    def as_dict(self) -> dict:
        out = asdict(self)
        if out["warning"] is None:
            del out["warning"]
        return out


@dataclass(frozen=True)
class NemirovskiReport:
    lhs: float
    old_bound: float
    new_bound: float
    mc_std_error: float
    mean_sq_norm: float
    w2: float

    def as_dict(self) -> dict:
        return asdict(self)


def _center(X: np.ndarray, center) -> np.ndarray:
    c = np.asarray(center, dtype=np.float64).reshape(-1)
    if c.shape != (X.shape[1],):
        raise ValueError("dimension mismatch")
    return X - c


def rademacher_average(
    X,
    center,
    num_sign_draws: int = DEFAULT_SIGN_DRAWS,
    norm_kind: MetricKind | str = MetricKind.L2,
    seed=0,
) -> tuple[float, float]:
    """Monte Carlo n^{-1/2} E_eps || sum eps_i (X_i - center) || and its standard error."""
    X = as_cloud(X)
    Xc = _center(X, center)
    if num_sign_draws < 1:
        raise ValueError("num_sign_draws must be >= 1")
    n = X.shape[0]
    rng = as_generator(seed)
    eps = np.where(rng.random((num_sign_draws, n)) < 0.5, -1.0, 1.0)
    vals = norm(eps @ Xc, norm_kind) / math.sqrt(n)
    se = float(vals.std(ddof=1) / math.sqrt(num_sign_draws)) if num_sign_draws > 1 else 0.0
    return float(vals.mean()), se


def mean_deviation_norm(X, center, norm_kind: MetricKind | str = MetricKind.L2) -> float:
    X = as_cloud(X)
    return float(norm(_center(X, center).sum(axis=0), norm_kind)) / math.sqrt(X.shape[0])


def correction_term(X, estimator: Estimator | str = Estimator.SPLIT_HALF, cfg: BoundConfig = BoundConfig()) -> float:
    """Estimated reflection distance divided by sqrt(2)."""
    X = as_cloud(X)
    if Estimator(estimator) is Estimator.SPLIT_HALF:
        est = split_half_reflection_estimate(X, cfg.estimator_r, cfg.p, cfg.metric, cfg.seed)
    else:
        bcfg = BootstrapConfig(
            m=cfg.m or X.shape[0], r=cfg.estimator_r, p=cfg.p, metric=cfg.metric, seed=cfg.seed
        )
        est = bootstrap_reflection_estimate(X, bcfg)
    return est.mean / math.sqrt(2.0)


def _assemble(n, lhs, R, C, reps) -> BoundReport:
    lhs, R, C = (np.asarray(a, dtype=np.float64) for a in (lhs, R, C))
    if reps > 1:
        se = math.sqrt(sum(a.var(ddof=1) / reps for a in (lhs, R, C)))
        warning = None
    else:
        se, warning = 0.0, "single replication; no Monte Carlo error estimate"
    Rm, Cm = float(R.mean()), float(C.mean())
    return BoundReport(
        n=n, lhs=float(lhs.mean()), R_n=Rm, C_n=Cm,
        old_bound=2.0 * Rm, new_bound=Rm + Cm,
        mc_std_error=se, reps=reps, warning=warning,
    )


def _bound_rep(k: int, spec: GeneratorSpec, n: int, cfg: BoundConfig) -> tuple[float, float, float]:
    rng = substream(cfg.seed, "bound", n, k)
    X = spec.sample(n, rng)
    mu = spec.true_mean()
    lhs = mean_deviation_norm(X, mu, cfg.metric)
    R, _ = rademacher_average(X, mu, cfg.num_sign_draws, cfg.metric, rng)
    C = correction_term(X, cfg.estimator, replace(cfg, seed=seed_from(rng)))
    return lhs, R, C


def compare_symmetrization_bounds(
    source: GeneratorSpec | np.ndarray,
    n: Optional[int] = None,
    reps: int = 1,
    cfg: BoundConfig = BoundConfig(),
    workers: int = 1,
) -> BoundReport:
    """Average lhs, R_n, C_n over ``reps`` generated samples, or evaluate once on data.

    Generator mode centers at the generator's true mean; data mode centers
    at the sample mean (so its lhs is identically zero).
    """
    if isinstance(source, GeneratorSpec):
        if n is None or n < 1 or reps < 1:
            raise ValueError("generator mode needs n >= 1 and reps >= 1")
        rows = pmap(partial(_bound_rep, spec=source, n=n, cfg=cfg), range(reps), workers)
        lhs, R, C = zip(*rows)
        return _assemble(n, lhs, R, C, reps)
    X = as_cloud(source)
    mu = X.mean(axis=0)
    rng = substream(cfg.seed, "bound-data")
    lhs = mean_deviation_norm(X, mu, cfg.metric)
    R, _ = rademacher_average(X, mu, cfg.num_sign_draws, cfg.metric, rng)
    C = correction_term(X, cfg.estimator, replace(cfg, seed=seed_from(rng)))
    return _assemble(X.shape[0], [lhs], [R], [C], 1)


def confidence_radius(R_eps: float, M: float, alpha: float, n: int, W2: float) -> float:
    """R_eps + (2n)^{-1/2} (2 sqrt(2) M sqrt(log(1/alpha)) + W2)."""
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    if n < 1 or not M > 0 or R_eps < 0 or W2 < 0:
        raise ValueError("need n >= 1, M > 0, R_eps >= 0, W2 >= 0")
    return R_eps + (2.0 * math.sqrt(2.0) * M * math.sqrt(math.log(1.0 / alpha)) + W2) / math.sqrt(2.0 * n)


def nemirovski_bounds(samples: Sequence, W2_estimate: float) -> NemirovskiReport:
    """Old and Wasserstein-corrected bounds on E||S_n||_inf^2 for l_inf(R^d).

    ``samples`` are independent replications of an (n, d) sample; moments are
    averaged across them. Type-2 constant of l_inf(R^d) is sqrt(2 log(2d)).
    """
    if W2_estimate < 0:
        raise ValueError("W2_estimate must be nonnegative")
    clouds = [as_cloud(s) for s in samples]
    if not clouds:
        raise ValueError("need at least one sample")
    shape = clouds[0].shape
    if any(c.shape != shape for c in clouds):
        raise ValueError("all samples must share n and d")
    n, d = shape
    stack = np.stack(clouds)
    mean_sq_norm = float(np.mean(np.abs(stack).max(axis=2) ** 2))
    sn_sq = np.abs(stack.mean(axis=1)).max(axis=1) ** 2
    reps = len(clouds)
    se = float(sn_sq.std(ddof=1) / math.sqrt(reps)) if reps > 1 else 0.0
    log2d = math.log(2 * d)
    return NemirovskiReport(
        lhs=float(sn_sq.mean()),
        old_bound=8.0 * log2d / n * mean_sq_norm,
        new_bound=2.0 * log2d / n * mean_sq_norm + math.sqrt(2.0 / n) * W2_estimate,
        mc_std_error=se,
        mean_sq_norm=mean_sq_norm,
        w2=float(W2_estimate),
    )


def _nemi_rep(k: int, n, d, alpha, w2_m, w2_r, seed):
    from .simgen import gen_shifted_beta

    rng = substream(seed, "nemirovski", d, repr(alpha), k)
    X = gen_shifted_beta(n, d, alpha, rng)
    est = bootstrap_reflection_estimate(
        X, BootstrapConfig(m=w2_m, r=w2_r, p=2, metric=MetricKind.LINF, seed=seed_from(rng))
    )
    return X, est.mean


def nemirovski_experiment(
    n: int,
    d: int,
    alpha: float,
    reps: int,
    w2_m: int = NEMIROVSKI_W2_RESAMPLE,
    w2_r: int = DEFAULT_REPLICATIONS,
    seed: int = 0,
    workers: int = 1,
) -> NemirovskiReport:
    """Shifted-Beta(alpha, 1) samples in l_inf(R^d); W2 from size-``w2_m`` bootstrap resamples."""
    out = pmap(partial(_nemi_rep, n=n, d=d, alpha=alpha, w2_m=w2_m, w2_r=w2_r, seed=seed), range(reps), workers)
    clouds, w2s = zip(*out)
    return nemirovski_bounds(clouds, math.fsum(w2s) / len(w2s))


def nemirovski_from_data(X, w2_m: int = NEMIROVSKI_W2_RESAMPLE, w2_r: int = DEFAULT_REPLICATIONS, seed: int = 0) -> NemirovskiReport:
    X = as_cloud(X)
    est = bootstrap_reflection_estimate(
        X, BootstrapConfig(m=w2_m, r=w2_r, p=2, metric=MetricKind.LINF, seed=seed)
    )
    return nemirovski_bounds([X], est.mean)
