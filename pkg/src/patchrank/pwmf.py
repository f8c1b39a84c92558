"""Impulse-robust weighted-mean prefilter guided by the ROAD statistic.

ROAD (rank of ordered absolute differences) sums a pixel's few smallest
absolute differences to its 8 neighbors: near zero on clean pixels, large on
impulses.  The filter averages the search window with weights that suppress
both corrupted candidates and corrupted pixels inside the patch comparison,
which makes it a practical initializer for iterative impulse denoisers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .validation import as_float_image

_TINY_WEIGHT = 1e-12


@dataclass(frozen=True)
class PwmfParams:
    """Weighted-mean filter parameters.

    ``road_neighbors`` of the 8 absolute neighbor differences are summed into
    the ROAD statistic; ``road_scale`` is the Gaussian bandwidth turning ROAD
    into a per-pixel cleanliness weight; ``patch_scale`` the bandwidth on the
    weighted patch distance.  Sides must be odd (patches and windows are
    centered).
    """

    road_neighbors: int = 4
    road_scale: float = 40.0
    patch_side: int = 3
    search_side: int = 11
    patch_scale: float = 30.0
    passes: int = 2

    def __post_init__(self):
        if not 1 <= self.road_neighbors <= 8:
            raise ValueError("road_neighbors must be in 1..8")
        if self.road_scale <= 0 or self.patch_scale <= 0:
            raise ValueError("bandwidths must be positive")
        if self.patch_side < 1 or self.patch_side % 2 == 0:
            raise ValueError("patch_side must be a positive odd integer")
        if self.search_side < self.patch_side or self.search_side % 2 == 0:
            raise ValueError("search_side must be an odd integer >= patch_side")
        if self.passes < 1:
            raise ValueError("passes must be >= 1")


def _reflect(index: int, extent: int) -> int:
    # Mirror without repeating the border pixel, matching np.pad(mode="reflect").
    if extent == 1:
        return 0
    if index < 0:
        return -index
    if index >= extent:
        return 2 * extent - 2 - index
    return index


def road(img, pos: tuple[int, int], neighbors: int = 4) -> float:
    """ROAD statistic at one pixel: sum of its smallest neighbor differences.

    Border neighbors are obtained by mirror reflection.  Scalar reference
    implementation; :func:`road_map` is the vectorized whole-image version.
    """
    x = as_float_image(img)
    height, width = x.shape
    r, c = pos
    if not (0 <= r < height and 0 <= c < width):
        raise ValueError(f"position {pos} outside {height}x{width} image")
    center = x[r, c]
    diffs = []
    for dr in (-1, 0, 1):
        for dc in (-1, 0, 1):
            if dr == 0 and dc == 0:
                continue
            rr = _reflect(r + dr, height)
            cc = _reflect(c + dc, width)
            diffs.append(abs(center - x[rr, cc]))
    diffs.sort()
    return float(sum(diffs[:neighbors]))


def road_map(img, neighbors: int = 4) -> np.ndarray:
    """ROAD statistic for every pixel at once."""
    x = as_float_image(img)
    height, width = x.shape
    padded = np.pad(x, 1, mode="reflect")
    diffs = np.empty((8, height, width), dtype=np.float64)
    k = 0
    for dr in (-1, 0, 1):
        for dc in (-1, 0, 1):
            if dr == 0 and dc == 0:
                continue
            diffs[k] = np.abs(x - padded[1 + dr : 1 + dr + height, 1 + dc : 1 + dc + width])
            k += 1
    smallest = np.partition(diffs, neighbors - 1, axis=0)[:neighbors]
    return smallest.sum(axis=0)


def _box_sum(arr: np.ndarray, side: int) -> np.ndarray:
    # Sum over every centered side x side patch; arr is pre-padded by side//2.
    height = arr.shape[0] - (side - 1)
    width = arr.shape[1] - (side - 1)
    out = np.zeros((height, width), dtype=np.float64)
    for dr in range(side):
        for dc in range(side):
            out += arr[dr : dr + height, dc : dc + width]
    return out


def _pwmf_pass(x: np.ndarray, prm: PwmfParams) -> np.ndarray:
    height, width = x.shape
    search_half = prm.search_side // 2
    patch_half = prm.patch_side // 2
    pad = search_half + patch_half

    cleanliness = np.exp(-(road_map(x, prm.road_neighbors) ** 2) / (2.0 * prm.road_scale**2))
    xp = np.pad(x, pad, mode="reflect")
    gp = np.pad(cleanliness, pad, mode="reflect")

    # Slices carry a patch_half margin so patch sums are defined at every pixel.
    base_vals = xp[pad - patch_half : pad + height + patch_half,
                   pad - patch_half : pad + width + patch_half]
    base_clean = gp[pad - patch_half : pad + height + patch_half,
                    pad - patch_half : pad + width + patch_half]

    num = np.zeros((height, width), dtype=np.float64)
    den = np.zeros((height, width), dtype=np.float64)
    inv_patch_bw = 1.0 / (2.0 * prm.patch_scale**2)

    for dy in range(-search_half, search_half + 1):
        for dx in range(-search_half, search_half + 1):
            shifted_vals = xp[pad + dy - patch_half : pad + dy + height + patch_half,
                              pad + dx - patch_half : pad + dx + width + patch_half]
            shifted_clean = gp[pad + dy - patch_half : pad + dy + height + patch_half,
                               pad + dx - patch_half : pad + dx + width + patch_half]
            pair_weight = base_clean * shifted_clean
            sq_diff = (base_vals - shifted_vals) ** 2
            weighted_sq = _box_sum(pair_weight * sq_diff, prm.patch_side)
            weight_mass = _box_sum(pair_weight, prm.patch_side)
            patch_dist = weighted_sq / np.maximum(weight_mass, _TINY_WEIGHT)

            candidate_clean = shifted_clean[patch_half : patch_half + height,
                                            patch_half : patch_half + width]
            w = candidate_clean * np.exp(-patch_dist * inv_patch_bw)
            num += w * shifted_vals[patch_half : patch_half + height,
                                    patch_half : patch_half + width]
            den += w

    out = num / np.maximum(den, _TINY_WEIGHT)
    starved = den < _TINY_WEIGHT
    if starved.any():
        for r, c in zip(*np.nonzero(starved)):
            window = xp[r + pad - search_half : r + pad + search_half + 1,
                        c + pad - search_half : c + pad + search_half + 1]
            out[r, c] = np.median(window)
    return out


def pwmf(img, params: PwmfParams = PwmfParams()) -> np.ndarray:
    """ROAD-weighted patch mean filter; the impulse-noise initializer.

    Each pixel becomes a weighted mean of its search window, where a
    candidate's weight combines its own cleanliness and a corrupted-pixel-
    blind patch similarity.  Pixels whose total weight underflows fall back
    to the window median.  Runs ``params.passes`` times, recomputing ROAD
    from the intermediate result each pass.
    """
    x = as_float_image(img)
    if x.shape[0] < params.search_side or x.shape[1] < params.search_side:
        raise ValueError(
            f"image {x.shape} smaller than the {params.search_side}x"
            f"{params.search_side} search window"
        )
    for _ in range(params.passes):
        x = _pwmf_pass(x, params)
    return x
