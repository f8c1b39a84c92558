"""Shared test fixtures: synthetic grayscale phantoms and brute-force oracles.

The phantoms are deterministic, integer-quantized images with the structure
patch methods rely on: smooth shading, sharp edges, and repeating texture.
"""

from __future__ import annotations

import numpy as np


def _quantize(x: np.ndarray) -> np.ndarray:
    return np.floor(np.clip(x, 0.0, 255.0) + 0.5)


def phantom_rings(size: int = 128) -> np.ndarray:
    """Concentric smooth rings: curved edges plus smooth shading."""
    yy, xx = np.mgrid[0:size, 0:size].astype(np.float64)
    cy, cx = size * 0.45, size * 0.55
    radius = np.hypot(yy - cy, xx - cx)
    values = 128.0 + 100.0 * np.cos(radius / 7.0) * np.exp(-radius / (1.4 * size))
    return _quantize(values)


def phantom_blocks(size: int = 128) -> np.ndarray:
    """Piecewise-constant tiles over a gradient, with one diagonal edge."""
    yy, xx = np.mgrid[0:size, 0:size].astype(np.float64)
    tiles = 60.0 * ((yy // 16 + xx // 16) % 3)
    gradient = 70.0 * xx / size
    values = 40.0 + tiles + gradient
    values[yy + xx > 1.5 * size] = 220.0
    return _quantize(values)


def phantom_waves(size: int = 128) -> np.ndarray:
    """Directional sinusoidal texture with slow amplitude modulation."""
    yy, xx = np.mgrid[0:size, 0:size].astype(np.float64)
    carrier = np.sin(xx / 3.0 + yy / 11.0) + 0.6 * np.sin(yy / 2.5)
    envelope = 0.5 + 0.5 * np.sin(xx / 40.0) * np.cos(yy / 33.0)
    values = 128.0 + 75.0 * carrier * envelope
    return _quantize(values)


def phantom_slopes(size: int = 128) -> np.ndarray:
    """Gently curved shading with no sharp structure; kind to smoothing filters."""
    yy, xx = np.mgrid[0:size, 0:size].astype(np.float64)
    values = (
        128.0
        + 40.0 * np.sin(xx / 70.0 + 1.0) * np.cos(yy / 91.0)
        + 30.0 * np.sin((xx + yy) / 110.0)
    )
    return _quantize(values)


PHANTOMS = {
    "rings": phantom_rings,
    "blocks": phantom_blocks,
    "waves": phantom_waves,
}


def phantom_corpus(size: int = 128) -> dict[str, np.ndarray]:
    return {name: maker(size) for name, maker in PHANTOMS.items()}


def random_integer_image(rng: np.random.Generator, height: int, width: int) -> np.ndarray:
    return rng.integers(0, 256, size=(height, width)).astype(np.float64)


# ---------------------------------------------------------------------------
# Brute-force oracles (kept deliberately independent of the library code).


def oracle_splitmix_sequence(seed: int, n: int) -> list[int]:
    """Standalone transcription of the pinned SplitMix64 schedule."""
    mask = (1 << 64) - 1
    state = seed & mask
    out = []
    for _ in range(n):
        state = (state + 0x9E3779B97F4A7C15) & mask
        x = state
        x ^= x >> 30
        x = (x * 0xBF58476D1CE4E5B9) & mask
        x ^= x >> 27
        x = (x * 0x94D049BB133111EB) & mask
        x ^= x >> 31
        out.append(x)
    return out


def oracle_impulse_walk(img: np.ndarray, p: float, seed: int) -> np.ndarray:
    """Replay the raster-order draw/replace walk with the standalone generator."""
    mask = (1 << 64) - 1
    state = seed & mask

    def uniform():
        nonlocal state
        state = (state + 0x9E3779B97F4A7C15) & mask
        x = state
        x ^= x >> 30
        x = (x * 0xBF58476D1CE4E5B9) & mask
        x ^= x >> 27
        x = (x * 0x94D049BB133111EB) & mask
        x ^= x >> 31
        return (x >> 11) * 2.0**-53

    out = img.astype(np.float64).copy()
    flat = out.ravel()
    for i in range(flat.size):
        if uniform() < p:
            flat[i] = float(min(int(uniform() * 256), 255))
    return out


def oracle_mode_by_l0(samples) -> int:
    """argmin over u in 0..255 of the count of samples differing from u."""
    best_u, best_cost = None, None
    samples = list(samples)
    for u in range(256):
        cost = sum(1 for v in samples if v != u)
        if best_cost is None or cost < best_cost:
            best_u, best_cost = u, cost
    return best_u


def oracle_block_match(guide: np.ndarray, ref, patch_side: int, search_side: int,
                       group_size: int):
    """Exhaustive similarity search with the documented window and tie rules."""
    height, width = guide.shape
    d = patch_side
    span = search_side - d
    r, c = ref

    def bounds(x, extent):
        lo = x - span // 2
        return max(0, lo), min(extent - d, lo + span)

    r_lo, r_hi = bounds(r, height)
    c_lo, c_hi = bounds(c, width)
    ref_patch = guide[r : r + d, c : c + d]
    scored = []
    raster = 0
    for rr in range(r_lo, r_hi + 1):
        for cc in range(c_lo, c_hi + 1):
            dist = float(((guide[rr : rr + d, cc : cc + d] - ref_patch) ** 2).sum())
            scored.append((dist, raster, (rr, cc)))
            raster += 1
    scored.sort(key=lambda item: (item[0], item[1]))
    members = [(r, c)]
    for _, _, pos in scored:
        if len(members) == group_size:
            break
        if pos != (r, c):
            members.append(pos)
    return members


def oracle_rank_sweep_objective(matrix: np.ndarray, tau: float) -> float:
    """min over r of ||S - T_r(S)||_F^2 + tau^2 * r, T_r = rank-r SVD truncation."""
    u, s, vt = np.linalg.svd(matrix, full_matrices=False)
    best = None
    for r in range(len(s) + 1):
        truncated = (u[:, :r] * s[:r]) @ vt[:r]
        objective = float(((matrix - truncated) ** 2).sum()) + tau * tau * r
        if best is None or objective < best:
            best = objective
    return best


def oracle_fidelity_pixel(observed: float, proposal: float, alpha: float) -> float:
    """Two-candidate minimizer of the counting + quadratic pixel objective."""
    cost_keep = 0.0 + 0.5 * alpha * (observed - proposal) ** 2
    cost_move = (1.0 if proposal != observed else 0.0) + 0.0
    return observed if cost_keep < cost_move else proposal
