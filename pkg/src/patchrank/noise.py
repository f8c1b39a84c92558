"""Noise synthesis and the likelihood machinery behind the l0 fidelity term.

Random-valued impulse noise replaces each pixel, independently with
probability ``p``, by a value uniform over the 8-bit intensity levels.  For
that model the per-pixel maximum-likelihood estimate from repeated
observations is the sample mode, which is what makes an exact-match counting
fidelity the statistically correct data term; ``impulse_log_likelihood`` and
``mle_pixel`` expose that argument so it can be tested directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rng import SplitMix64
from .validation import as_float_image

IMPULSE_KIND = "impulse-uniform"
GAUSSIAN_KIND = "gaussian"

_LEVELS = 256  # 8-bit intensity alphabet used by the impulse model


@dataclass(frozen=True)
class NoiseSpec:
    """Declarative description of a synthetic corruption.

    ``p`` is the impulse replacement probability, ``sigma`` the Gaussian
    standard deviation (intensity units).  Only the 8-bit range [0, 255] is
    supported for impulse values.
    """

    kind: str
    p: float = 0.0
    sigma: float = 0.0
    lo: float = 0.0
    hi: float = 255.0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in (IMPULSE_KIND, GAUSSIAN_KIND):
            raise ValueError(f"unknown noise kind {self.kind!r}")
        if self.kind == IMPULSE_KIND and not 0.0 <= self.p <= 1.0:
            raise ValueError(f"impulse proportion p={self.p} outside [0, 1]")
        if self.kind == GAUSSIAN_KIND and self.sigma < 0:
            raise ValueError(f"gaussian sigma={self.sigma} must be >= 0")
        if not self.lo < self.hi:
            raise ValueError(f"empty intensity range [{self.lo}, {self.hi}]")


def add_impulse_noise(img, p: float, *, seed: int = 0) -> np.ndarray:
    """Corrupt ``img`` with random-valued impulse noise of proportion ``p``.

    Pixels are visited in raster order.  Each pixel draws one uniform; when
    it falls below ``p`` a second uniform picks a replacement level
    ``floor(u*256)`` in 0..255, otherwise the pixel is copied.  The output is
    a pure function of ``(img, p, seed)``.
    """
    x = as_float_image(img)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"impulse proportion p={p} outside [0, 1]")
    rng = SplitMix64(seed)
    out = x.copy()
    flat = out.ravel()
    for i in range(flat.size):
        if rng.uniform() < p:
            level = int(rng.uniform() * _LEVELS)
            flat[i] = float(min(max(level, 0), 255))
    return out


def add_gaussian_noise(img, sigma: float, *, seed: int = 0) -> np.ndarray:
    """Add zero-mean Gaussian noise of standard deviation ``sigma``.

    Box-Muller with two uniforms per pixel in raster order; the first uniform
    is mapped to (0, 1] so the log is always finite.  Values are not clamped,
    so the result may leave [0, 255].
    """
    x = as_float_image(img)
    if sigma < 0:
        raise ValueError(f"gaussian sigma={sigma} must be >= 0")
    rng = SplitMix64(seed)
    out = x.copy()
    flat = out.ravel()
    two_pi = 2.0 * math.pi
    for i in range(flat.size):
        u1 = 1.0 - rng.uniform()
        u2 = rng.uniform()
        flat[i] += sigma * math.sqrt(-2.0 * math.log(u1)) * math.cos(two_pi * u2)
    return out


def apply_noise(img, spec: NoiseSpec) -> np.ndarray:
    """Dispatch a :class:`NoiseSpec` onto an image."""
    if spec.kind == IMPULSE_KIND:
        if (spec.lo, spec.hi) != (0.0, 255.0):
            raise ValueError("impulse noise supports only the 8-bit range [0, 255]")
        return add_impulse_noise(img, spec.p, seed=spec.seed)
    return add_gaussian_noise(img, spec.sigma, seed=spec.seed)


def _check_samples(samples) -> np.ndarray:
    arr = np.asarray(samples)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("samples must be a non-empty 1-D sequence")
    if not np.all(arr == np.floor(arr)) or arr.min() < 0 or arr.max() > 255:
        raise ValueError("samples must be integers in [0, 255]")
    return arr.astype(np.int64)


def impulse_log_likelihood(samples, u: int, p: float) -> float:
    """Log-likelihood of intensity level ``u`` given repeated noisy samples.

    With ``N`` of the ``n`` samples equal to ``u``, the impulse model gives
    ``N*log(1 - p + p/256) + (n - N)*log(p/256)``.
    """
    arr = _check_samples(samples)
    if not 0.0 < p < 1.0:
        raise ValueError(f"p={p} must lie strictly inside (0, 1)")
    n = arr.size
    matches = int(np.count_nonzero(arr == u))
    return matches * math.log(1.0 - p + p / _LEVELS) + (n - matches) * math.log(p / _LEVELS)


def mle_pixel(samples, p: float = 0.5) -> int:
    """Maximum-likelihood intensity for repeated impulse-noisy observations.

    This is the sample mode (ties broken by the smallest value); the noise
    proportion ``p`` does not affect the maximizer, only the likelihood's
    value, so it is accepted for interface symmetry and otherwise unused.
    """
    arr = _check_samples(samples)
    counts = np.bincount(arr, minlength=_LEVELS)
    return int(np.argmax(counts))
