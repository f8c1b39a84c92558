"""Plug-and-Play ADMM for impulse denoising with a patch low-rank prior.

The objective couples an exact-match counting fidelity to the observation
with a rank penalty on every patch group.  ADMM splits it into three steps
per iteration: a closed-form per-pixel fidelity update, a low-rank denoising
pass on the shifted estimate, and the scaled dual update.  The model is not
convex; the iteration count is fixed rather than monitored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lowrank import plr_denoise
from .patches import PatchGeometry
from .validation import as_float_image, check_same_shape


@dataclass(frozen=True)
class AdmmConfig:
    """Solver parameters.

    ``alpha`` is the quadratic coupling weight and ``threshold`` the low-rank
    threshold applied inside every prior update.  The implied rank-penalty
    weight ``mu = group_size * threshold**2 * alpha / 2`` is exposed for
    reporting only; the iteration itself consumes just ``alpha`` and
    ``threshold``.
    """

    alpha: float = 1.0 / 72.0
    threshold: float = 7.5
    geometry: PatchGeometry = PatchGeometry()
    iterations: int = 50

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError(f"alpha={self.alpha} must be positive")
        if self.threshold < 0:
            raise ValueError(f"threshold={self.threshold} must be >= 0")
        if self.iterations < 0:
            raise ValueError(f"iterations={self.iterations} must be >= 0")

    @property
    def mu(self) -> float:
        return self.geometry.group_size * self.threshold * self.threshold * self.alpha / 2

    @property
    def fidelity_cut(self) -> float:
        """Residual magnitude below which a pixel snaps back to the observation."""
        return math.sqrt(2.0 / self.alpha)


@dataclass
class AdmmState:
    """Iterates after ``iteration`` completed ADMM steps."""

    u: np.ndarray
    v: np.ndarray
    b: np.ndarray
    iteration: int


def fidelity_update(noisy, v, b, alpha: float) -> np.ndarray:
    """Exact minimizer of the counting-fidelity step.

    Per pixel the candidates are the observation and ``v + b``; the
    observation wins exactly when ``|v + b - noisy| < sqrt(2/alpha)``
    (strict), which is the cheaper of the two objective values.
    """
    x0 = as_float_image(noisy, "noisy")
    vv = as_float_image(v, "v")
    bb = as_float_image(b, "b")
    check_same_shape(x0, vv)
    check_same_shape(x0, bb)
    if alpha <= 0:
        raise ValueError(f"alpha={alpha} must be positive")
    candidate = vv + bb
    return np.where(np.abs(candidate - x0) < math.sqrt(2.0 / alpha), x0, candidate)


def lowrank_update(u_next, b, cfg: AdmmConfig, threads: int = 1) -> np.ndarray:
    """Prior step: low-rank denoise ``u - b``, matching patches on it too."""
    uu = as_float_image(u_next, "u")
    bb = as_float_image(b, "b")
    check_same_shape(uu, bb)
    return plr_denoise(uu - bb, cfg.geometry, cfg.threshold, threads=threads)


def dual_update(b, v_next, u_next) -> np.ndarray:
    """Scaled dual ascent: ``b + (v - u)`` elementwise.

    Grouped so that agreeing iterates leave the dual bit-exactly unchanged.
    """
    bb = as_float_image(b, "b")
    vv = as_float_image(v_next, "v")
    uu = as_float_image(u_next, "u")
    check_same_shape(bb, vv)
    check_same_shape(bb, uu)
    return bb + (vv - uu)


def run_admm_state(noisy, cfg: AdmmConfig, init, threads: int = 1) -> AdmmState:
    """Run the full splitting loop and return all final iterates.

    ``init`` seeds the prior iterate (normally a PWMF result); the dual
    starts at zero.  Intensities are never clamped between iterations.
    """
    x0 = as_float_image(noisy, "noisy")
    v = as_float_image(init, "init").copy()
    check_same_shape(x0, v)
    u = v.copy()
    b = np.zeros_like(x0)
    for _ in range(cfg.iterations):
        u = fidelity_update(x0, v, b, cfg.alpha)
        v = lowrank_update(u, b, cfg, threads=threads)
        b = dual_update(b, v, u)
    return AdmmState(u=u, v=v, b=b, iteration=cfg.iterations)


def run_admm(noisy, cfg: AdmmConfig, init, threads: int = 1) -> np.ndarray:
    """Denoise ``noisy`` and return the final prior iterate ``v``."""
    return run_admm_state(noisy, cfg, init, threads=threads).v
