"""Seeded generators for the experimental distributions.

Uniform deviates come from the pinned Philox stream (see :mod:`symwass.rng`);
normals use Box-Muller on those uniforms and Beta(alpha, 1) uses the inverse
CDF, so no platform-specific samplers are involved.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .rng import as_generator


class GeneratorKind(str, enum.Enum):
    RADEMACHER = "rademacher"
    GAUSS_MIXTURE = "mixture"
    SHIFTED_BETA = "beta"


@dataclass(frozen=True)
class GeneratorSpec:
    kind: GeneratorKind
    d: int
    p: float = 0.5
    alpha: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", GeneratorKind(self.kind))
        if self.d < 1:
            raise ValueError("d must be >= 1")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")

    def sample(self, n: int, seed) -> np.ndarray:
        if self.kind is GeneratorKind.RADEMACHER:
            return gen_rademacher(n, self.d, self.p, seed)
        if self.kind is GeneratorKind.GAUSS_MIXTURE:
            return gen_gauss_mixture(n, self.d, seed)
        return gen_shifted_beta(n, self.d, self.alpha, seed)

    def true_mean(self) -> np.ndarray:
        if self.kind is GeneratorKind.RADEMACHER:
            return np.full(self.d, 2.0 * self.p - 1.0)
        return np.zeros(self.d)


def _check_shape(n: int, d: int) -> None:
    if n < 1 or d < 1:
        raise ValueError("n and d must be >= 1")


def _uniform_open(rng: np.random.Generator, size) -> np.ndarray:
    # (0, 1]: keeps log() finite in Box-Muller
    return 1.0 - rng.random(size)


def standard_normals(rng: np.random.Generator, size: tuple[int, int]) -> np.ndarray:
    """Box-Muller transform of pinned uniforms."""
    count = int(np.prod(size))
    pairs = (count + 1) // 2
    u1 = _uniform_open(rng, pairs)
    u2 = rng.random(pairs)
    r = np.sqrt(-2.0 * np.log(u1))
    z = np.empty(2 * pairs)
    z[0::2] = r * np.cos(2.0 * np.pi * u2)
    z[1::2] = r * np.sin(2.0 * np.pi * u2)
    return z[:count].reshape(size)


def gen_rademacher(n: int, d: int, p: float = 0.5, seed=0) -> np.ndarray:
    _check_shape(n, d)
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    u = as_generator(seed).random((n, d))
    return np.where(u < p, 1.0, -1.0)


def gen_gaussian(n: int, d: int, mean=None, seed=0) -> np.ndarray:
    _check_shape(n, d)
    shift = np.zeros(d) if mean is None else np.asarray(mean, dtype=np.float64)
    if shift.shape != (d,):
        raise ValueError("dimension mismatch")
    return standard_normals(as_generator(seed), (n, d)) + shift


def gen_gauss_mixture(n: int, d: int, seed=0) -> np.ndarray:
    """Rows from 0.5 N(-1, I) + 0.5 N(1, I)."""
    _check_shape(n, d)
    rng = as_generator(seed)
    sign = np.where(rng.random(n) < 0.5, -1.0, 1.0)
    return standard_normals(rng, (n, d)) + sign[:, None]


def gen_shifted_beta(n: int, d: int, alpha: float, seed=0) -> np.ndarray:
    """Beta(alpha, 1) entries shifted by their mean alpha/(1+alpha)."""
    _check_shape(n, d)
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    u = as_generator(seed).random((n, d))
    return u ** (1.0 / alpha) - alpha / (1.0 + alpha)
