"""Patch grids, block matching, similarity matrices, and aggregation.

A reference grid of overlapping ``d x d`` patches is laid over the image; for
each reference the most similar patches inside a local search window are
stacked column-wise into a similarity matrix.  After per-group denoising the
columns are scattered back and overlapping estimates are averaged.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .validation import as_float_image


@dataclass(frozen=True)
class PatchGeometry:
    """Patch extraction parameters.

    ``patch_side`` is the square patch edge, ``search_side`` the edge of the
    search window centered on a reference patch, ``group_size`` the number of
    similar patches stacked per group (reference included), and ``stride``
    the reference-grid step.
    """

    patch_side: int = 7
    search_side: int = 43
    group_size: int = 245
    stride: int = 4

    def __post_init__(self):
        if self.patch_side < 1:
            raise ValueError("patch_side must be positive")
        if self.search_side < self.patch_side:
            raise ValueError(
                f"search_side={self.search_side} smaller than patch_side={self.patch_side}"
            )
        if self.stride < 1:
            raise ValueError("stride must be >= 1")
        limit = (self.search_side - self.patch_side + 1) ** 2
        if not 1 <= self.group_size <= limit:
            raise ValueError(
                f"group_size={self.group_size} outside [1, {limit}] supported by a "
                f"{self.search_side}x{self.search_side} window with "
                f"{self.patch_side}x{self.patch_side} patches"
            )


def _grid_1d(extent: int, patch_side: int, stride: int) -> list[int]:
    last = extent - patch_side
    positions = list(range(0, last + 1, stride))
    if positions[-1] != last:
        positions.append(last)
    return positions


def reference_grid(width: int, height: int, geom: PatchGeometry) -> list[tuple[int, int]]:
    """Top-left corners of the reference patches, in row-major order.

    Rows step by ``stride`` with the final row forced to ``height - d`` so the
    grid always reaches the borders; columns likewise.
    """
    d = geom.patch_side
    if height < d or width < d:
        raise ValueError(f"image {height}x{width} smaller than patch side {d}")
    rows = _grid_1d(height, d, geom.stride)
    cols = _grid_1d(width, d, geom.stride)
    return [(r, c) for r in rows for c in cols]


def _candidate_bounds(ref: int, extent: int, patch_side: int, search_side: int) -> tuple[int, int]:
    # Top-left corners of candidate patches fully inside both the image and
    # the search window centered on the reference patch; the window is
    # clipped (not shifted) at image borders.
    span = search_side - patch_side
    lo = ref - span // 2
    hi = lo + span
    return max(0, lo), min(extent - patch_side, hi)


def block_match(guide, ref: tuple[int, int], geom: PatchGeometry) -> list[tuple[int, int]]:
    """Positions of the ``group_size`` patches most similar to ``ref``.

    Candidates are ranked by squared Euclidean distance between patch vectors;
    ties are broken by raster order of the candidate position.  The reference
    itself is always first in the result.  Raises when the clipped window
    holds fewer than ``group_size`` candidates.
    """
    img = as_float_image(guide, "guide")
    height, width = img.shape
    d = geom.patch_side
    r, c = ref
    if not (0 <= r <= height - d and 0 <= c <= width - d):
        raise ValueError(f"reference patch at {ref} not inside {height}x{width} image")

    r_lo, r_hi = _candidate_bounds(r, height, d, geom.search_side)
    c_lo, c_hi = _candidate_bounds(c, width, d, geom.search_side)
    n_rows = r_hi - r_lo + 1
    n_cols = c_hi - c_lo + 1
    if n_rows * n_cols < geom.group_size:
        raise ValueError(
            f"only {n_rows * n_cols} candidate patches near {ref} in a "
            f"{height}x{width} image; group_size={geom.group_size} is infeasible"
        )

    windows = sliding_window_view(img, (d, d))
    candidates = windows[r_lo : r_hi + 1, c_lo : c_hi + 1]
    dist = ((candidates - windows[r, c]) ** 2).sum(axis=(2, 3)).ravel()

    order = np.argsort(dist, kind="stable")
    ref_flat = (r - r_lo) * n_cols + (c - c_lo)
    if order[0] == ref_flat:
        picked = order[: geom.group_size]
    else:
        rest = order[order != ref_flat]
        picked = np.concatenate(([ref_flat], rest[: geom.group_size - 1]))
    return [(int(r_lo + idx // n_cols), int(c_lo + idx % n_cols)) for idx in picked]


def build_similarity_matrix(img, members, patch_side: int) -> np.ndarray:
    """Stack the member patches of one group as a ``d**2 x m`` matrix.

    Column ``j`` is the column-major vectorization of the patch at
    ``members[j]`` read from ``img`` (positions may come from matching on a
    different guide image).
    """
    x = as_float_image(img)
    height, width = x.shape
    d = patch_side
    pos = np.asarray(members, dtype=np.int64).reshape(len(members), 2)
    if pos.size and (
        pos[:, 0].min() < 0
        or pos[:, 1].min() < 0
        or pos[:, 0].max() > height - d
        or pos[:, 1].max() > width - d
    ):
        raise ValueError(f"member patch positions not inside {height}x{width} image")
    patches = sliding_window_view(x, (d, d))[pos[:, 0], pos[:, 1]]
    # (m, d, d) -> columns in column-major patch order
    return patches.transpose(0, 2, 1).reshape(len(members), d * d).T.copy()


class AggregationBuffer:
    """Per-pixel accumulator for overlapping patch estimates."""

    def __init__(self, height: int, width: int):
        self.total = np.zeros((height, width), dtype=np.float64)
        self.count = np.zeros((height, width), dtype=np.int64)

    def scatter(self, members, values: np.ndarray, patch_side: int) -> None:
        """Add one group's denoised matrix back at its member positions.

        ``values`` has one column per member, in the same column-major patch
        layout produced by :func:`build_similarity_matrix`.  Duplicate members
        accumulate, matching the averaging contract.
        """
        d = patch_side
        if values.shape != (d * d, len(members)):
            raise ValueError(
                f"values shape {values.shape} does not match {d * d}x{len(members)} group"
            )
        width = self.total.shape[1]
        size = self.total.size
        pos = np.asarray(members, dtype=np.int64).reshape(len(members), 2)
        base = pos[:, 0] * width + pos[:, 1]
        k = np.arange(d * d, dtype=np.int64)
        offsets = (k % d) * width + k // d  # column-major within-patch order
        flat = (offsets[:, None] + base[None, :]).ravel()
        self.total.ravel()[:] += np.bincount(flat, weights=values.ravel(), minlength=size)
        self.count.ravel()[:] += np.bincount(flat, minlength=size)

    def finalize(self) -> np.ndarray:
        """Per-pixel mean of all contributions; every pixel must be covered."""
        if np.any(self.count == 0):
            holes = int(np.count_nonzero(self.count == 0))
            raise ValueError(f"aggregation coverage violated: {holes} pixels got no estimate")
        return self.total / self.count
