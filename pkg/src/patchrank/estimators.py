"""scikit-learn style wrappers so the denoisers compose with the ecosystem.

Each estimator is stateless: ``fit`` validates input and returns ``self``,
``transform`` maps one 2-D grayscale array to its denoised version.
Hyperparameters follow sklearn conventions (constructor args stored verbatim,
``get_params``/``set_params`` inherited), so the classes work with ``clone``,
pipelines, and grid search.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array

from .admm import AdmmConfig, run_admm_state
from .lowrank import plr_denoise
from .patches import PatchGeometry
from .pwmf import PwmfParams, pwmf


def _check_image(X) -> np.ndarray:
    # non-finite values are rejected by check_array's defaults
    return check_array(X, dtype=np.float64, ensure_2d=True)


class RoadWeightedMeanFilter(BaseEstimator, TransformerMixin):
    """Impulse-robust weighted mean filter (ROAD-guided)."""

    def __init__(self, road_neighbors=4, road_scale=40.0, patch_side=3,
                 search_side=11, patch_scale=30.0, passes=2):
        self.road_neighbors = road_neighbors
        self.road_scale = road_scale
        self.patch_side = patch_side
        self.search_side = search_side
        self.patch_scale = patch_scale
        self.passes = passes

    def _params(self) -> PwmfParams:
        return PwmfParams(
            road_neighbors=self.road_neighbors,
            road_scale=self.road_scale,
            patch_side=self.patch_side,
            search_side=self.search_side,
            patch_scale=self.patch_scale,
            passes=self.passes,
        )

    def fit(self, X, y=None):
        self._params()
        _check_image(X)
        return self

    def transform(self, X):
        return pwmf(_check_image(X), self._params())


class LowRankPatchDenoiser(BaseEstimator, TransformerMixin):
    """Single-pass patch low-rank denoiser (Gaussian-noise oriented)."""

    def __init__(self, patch_side=7, search_side=43, group_size=245, stride=4,
                 threshold=7.5, threads=1):
        self.patch_side = patch_side
        self.search_side = search_side
        self.group_size = group_size
        self.stride = stride
        self.threshold = threshold
        self.threads = threads

    def _geometry(self) -> PatchGeometry:
        return PatchGeometry(
            patch_side=self.patch_side,
            search_side=self.search_side,
            group_size=self.group_size,
            stride=self.stride,
        )

    def fit(self, X, y=None):
        self._geometry()
        _check_image(X)
        return self

    def transform(self, X):
        return plr_denoise(
            _check_image(X), self._geometry(), self.threshold, threads=self.threads
        )


class ImpulseAdmmDenoiser(BaseEstimator, TransformerMixin):
    """Full impulse-noise pipeline: weighted-mean init, then ADMM iterations.

    ``emit`` selects the reported iterate: ``"v"`` (default) is the low-rank
    regularized image, ``"u"`` the fidelity iterate.  ``init_filter`` may be
    any transformer producing the initial image; ``None`` means a default
    :class:`RoadWeightedMeanFilter`.
    """

    def __init__(self, alpha=1.0 / 72.0, threshold=7.5, patch_side=7,
                 search_side=43, group_size=245, stride=4, iterations=50,
                 emit="v", init_filter=None, threads=1):
        self.alpha = alpha
        self.threshold = threshold
        self.patch_side = patch_side
        self.search_side = search_side
        self.group_size = group_size
        self.stride = stride
        self.iterations = iterations
        self.emit = emit
        self.init_filter = init_filter
        self.threads = threads

    def _config(self) -> AdmmConfig:
        geometry = PatchGeometry(
            patch_side=self.patch_side,
            search_side=self.search_side,
            group_size=self.group_size,
            stride=self.stride,
        )
        return AdmmConfig(
            alpha=self.alpha,
            threshold=self.threshold,
            geometry=geometry,
            iterations=self.iterations,
        )

    def fit(self, X, y=None):
        self._config()
        if self.emit not in ("u", "v"):
            raise ValueError(f"emit={self.emit!r} must be 'u' or 'v'")
        _check_image(X)
        return self

    def transform(self, X):
        if self.emit not in ("u", "v"):
            raise ValueError(f"emit={self.emit!r} must be 'u' or 'v'")
        noisy = _check_image(X)
        init_filter = self.init_filter if self.init_filter is not None else RoadWeightedMeanFilter()
        init = init_filter.fit(noisy).transform(noisy)
        state = run_admm_state(noisy, self._config(), init, threads=self.threads)
        return state.u if self.emit == "u" else state.v
