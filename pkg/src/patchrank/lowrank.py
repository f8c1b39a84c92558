"""Exact rank-penalized denoising of patch groups via SVD hard thresholding.

For a similarity matrix ``S`` the model ``min_X ||S - X||_F^2 + tau^2 Rank(X)``
has a closed-form global minimizer: keep the singular values strictly above
``tau`` and zero the rest.  Applying this to every patch group and averaging
the overlapping estimates denoises a whole image.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from threadpoolctl import threadpool_limits

from .patches import (
    AggregationBuffer,
    PatchGeometry,
    block_match,
    build_similarity_matrix,
    reference_grid,
)
from .validation import as_float_image, check_same_shape


def hard_threshold_rank(matrix, tau: float) -> tuple[np.ndarray, int]:
    """Globally minimize ``||S - X||_F^2 + tau^2 Rank(X)``.

    Returns the minimizer and its rank (the number of singular values
    strictly greater than ``tau``).  ``tau = 0`` keeps every positive
    singular value, so the input is returned unchanged.
    """
    s_mat = np.asarray(matrix, dtype=np.float64)
    if s_mat.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {s_mat.shape}")
    if not np.all(np.isfinite(s_mat)):
        raise ValueError("matrix contains non-finite entries")
    if tau < 0:
        raise ValueError(f"threshold tau={tau} must be >= 0")
    if tau == 0.0:
        sigma = np.linalg.svd(s_mat, compute_uv=False)
        return s_mat.copy(), int(np.count_nonzero(sigma > 0.0))
    left, sigma, right_t = np.linalg.svd(s_mat, full_matrices=False)
    keep = sigma > tau
    rank = int(np.count_nonzero(keep))
    if rank == 0:
        return np.zeros_like(s_mat), 0
    approx = (left[:, keep] * sigma[keep]) @ right_t[keep]
    return approx, rank


def plr_denoise(
    img,
    geom: PatchGeometry = PatchGeometry(),
    threshold: float = 7.5,
    guide=None,
    threads: int = 1,
) -> np.ndarray:
    """Patch low-rank denoising pass over a grayscale image.

    For every reference patch on the grid, the most similar patches are
    located on ``guide`` (default: the image itself), their values are read
    from ``img`` and stacked, the stack is rank-thresholded at
    ``tau = threshold * sqrt(group_size)``, and the denoised columns are
    scattered back.  Overlapping estimates are averaged.

    ``threads > 1`` parallelizes the per-group work; results are merged in
    group order, so the output is bit-identical for any thread count.
    """
    x = as_float_image(img)
    if guide is None:
        g = x
    else:
        g = as_float_image(guide, "guide")
        check_same_shape(x, g)
    if threshold < 0:
        raise ValueError(f"threshold={threshold} must be >= 0")

    height, width = x.shape
    d = geom.patch_side
    tau = threshold * math.sqrt(geom.group_size)
    refs = reference_grid(width, height, geom)
    buf = AggregationBuffer(height, width)

    def process(ref):
        members = block_match(g, ref, geom)
        group = build_similarity_matrix(x, members, d)
        denoised, _ = hard_threshold_rank(group, tau)
        return members, denoised

    # The per-group SVDs are tiny; BLAS-internal threading only adds sync
    # overhead and would interact badly with the worker pool, so it is pinned
    # to one thread here.  Group results merge in grid order either way, which
    # keeps the output bit-identical for every thread count.
    with threadpool_limits(limits=1, user_api="blas"):
        if threads <= 1:
            for ref in refs:
                members, denoised = process(ref)
                buf.scatter(members, denoised, d)
        else:
            block = max(64, 16 * threads)
            with ThreadPoolExecutor(max_workers=threads) as pool:
                for start in range(0, len(refs), block):
                    for members, denoised in pool.map(process, refs[start : start + block]):
                        buf.scatter(members, denoised, d)
    return buf.finalize()
