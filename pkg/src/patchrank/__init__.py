"""Patch-based low-rank removal of random-valued impulse noise.

The package pairs an exact low-rank prior on groups of similar patches with
an exact-match counting fidelity, solved by a Plug-and-Play ADMM loop seeded
with a ROAD-guided weighted-mean prefilter.  A CLI (``patchrank``) exposes
noise synthesis, denoising, and a reproducible PSNR benchmark.
"""

from .admm import (
    AdmmConfig,
    AdmmState,
    dual_update,
    fidelity_update,
    lowrank_update,
    run_admm,
    run_admm_state,
)
from .bench import BenchRow, cell_seed, run_bench, write_csv
from .estimators import ImpulseAdmmDenoiser, LowRankPatchDenoiser, RoadWeightedMeanFilter
from .image_io import (
    ImageFormatError,
    MalformedDataError,
    MalformedHeaderError,
    TruncatedDataError,
    UnsupportedFormatError,
    UnsupportedMaxvalError,
    quantize,
    read_image,
    write_image,
)
from .lowrank import hard_threshold_rank, plr_denoise
from .manifest import manifest_path_for, read_manifest, write_manifest
from .metrics import l0_distance, psnr
from .noise import (
    GAUSSIAN_KIND,
    IMPULSE_KIND,
    NoiseSpec,
    add_gaussian_noise,
    add_impulse_noise,
    apply_noise,
    impulse_log_likelihood,
    mle_pixel,
)
from .patches import (
    AggregationBuffer,
    PatchGeometry,
    block_match,
    build_similarity_matrix,
    reference_grid,
)
from .pwmf import PwmfParams, pwmf, road, road_map
from .rng import SplitMix64, hash_string

__version__ = "0.1.0"

__all__ = [
    "AdmmConfig",
    "AdmmState",
    "AggregationBuffer",
    "BenchRow",
    "GAUSSIAN_KIND",
    "IMPULSE_KIND",
    "ImageFormatError",
    "ImpulseAdmmDenoiser",
    "LowRankPatchDenoiser",
    "MalformedDataError",
    "MalformedHeaderError",
    "NoiseSpec",
    "PatchGeometry",
    "PwmfParams",
    "RoadWeightedMeanFilter",
    "SplitMix64",
    "TruncatedDataError",
    "UnsupportedFormatError",
    "UnsupportedMaxvalError",
    "add_gaussian_noise",
    "add_impulse_noise",
    "apply_noise",
    "block_match",
    "build_similarity_matrix",
    "cell_seed",
    "dual_update",
    "fidelity_update",
    "hard_threshold_rank",
    "hash_string",
    "impulse_log_likelihood",
    "l0_distance",
    "lowrank_update",
    "manifest_path_for",
    "mle_pixel",
    "plr_denoise",
    "psnr",
    "pwmf",
    "quantize",
    "read_image",
    "read_manifest",
    "reference_grid",
    "road",
    "road_map",
    "run_admm",
    "run_admm_state",
    "run_bench",
    "write_csv",
    "write_image",
    "write_manifest",
]
