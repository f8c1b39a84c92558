"""Command-line interface: noise synthesis, denoising, and the PSNR bench.

Exit codes: 0 success, 1 usage error, 2 runtime error.  Every output image is
accompanied by a ``<output>.manifest`` key=value file that records the exact
parameters and seed, so any result can be reproduced byte-for-byte.
"""

from __future__ import annotations

import argparse
import glob
import os
import sys

from . import __version__
from .admm import AdmmConfig, run_admm_state
from .bench import run_bench, write_csv
from .image_io import ImageFormatError, read_image, write_image
from .lowrank import plr_denoise
from .manifest import manifest_path_for, write_manifest
from .metrics import psnr
from .noise import GAUSSIAN_KIND, IMPULSE_KIND, NoiseSpec, apply_noise
from .patches import PatchGeometry
from .pwmf import PwmfParams, pwmf


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="patchrank", description=__doc__)
    parser.add_argument("--version", action="version", version=f"patchrank {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    noise = sub.add_parser("add-noise", help="synthesize impulse or gaussian noise")
    noise.add_argument("--in", dest="input", required=True, help="clean input image (PGM/PNG)")
    noise.add_argument("--out", dest="output", required=True, help="noisy output image")
    noise.add_argument("--kind", choices=["impulse", "gaussian"], required=True)
    noise.add_argument("--p", type=float, default=None, help="impulse proportion in [0, 1]")
    noise.add_argument("--sigma", type=float, default=None, help="gaussian std-dev")
    noise.add_argument("--seed", type=int, default=0, help="64-bit noise seed")
    noise.set_defaults(func=_cmd_add_noise)

    den = sub.add_parser("denoise", help="denoise an image")
    den.add_argument("--in", dest="input", required=True, help="noisy input image")
    den.add_argument("--out", dest="output", required=True, help="denoised output image")
    den.add_argument("--method", choices=["pwmf", "plr", "admm"], required=True)
    den.add_argument("--d", type=int, default=7, help="patch side")
    den.add_argument("--M", type=int, default=43, help="search window side")
    den.add_argument("--m", type=int, default=245, help="patches per group")
    den.add_argument("--t", type=float, default=7.5, help="rank threshold")
    den.add_argument("--alpha", type=float, default=1.0 / 72.0, help="fidelity coupling weight")
    den.add_argument("--iters", type=int, default=50, help="ADMM iterations")
    den.add_argument("--stride", type=int, default=4, help="reference grid step")
    den.add_argument("--emit", choices=["u", "v"], default="v",
                     help="ADMM iterate to write (fidelity or low-rank)")
    den.add_argument("--ref", default=None, help="clean reference; prints PSNR when given")
    den.add_argument("--threads", type=int, default=1, help="worker threads for patch groups")
    den.set_defaults(func=_cmd_denoise)

    bench = sub.add_parser("bench", help="PSNR benchmark over a directory of clean images")
    bench.add_argument("--dir", dest="corpus", required=True, help="directory of clean images")
    bench.add_argument("--p", required=True, help="comma-separated impulse levels, e.g. 0.2,0.4")
    bench.add_argument("--out", dest="output", default="bench.csv", help="CSV report path")
    bench.add_argument("--desk", action="store_true",
                       help="desk protocol: 128x128 center crops, 20 iterations")
    bench.add_argument("--threads", type=int, default=1)
    bench.set_defaults(func=_cmd_bench)
    return parser


def _noise_spec(args) -> NoiseSpec:
    if args.kind == "impulse":
        if args.p is None:
            raise UsageError("--kind impulse requires --p")
        if args.sigma is not None:
            raise UsageError("--sigma is only valid with --kind gaussian")
        if not 0.0 <= args.p <= 1.0:
            raise UsageError(f"--p {args.p} outside [0, 1]")
        return NoiseSpec(kind=IMPULSE_KIND, p=args.p, seed=args.seed)
    if args.sigma is None:
        raise UsageError("--kind gaussian requires --sigma")
    if args.p is not None:
        raise UsageError("--p is only valid with --kind impulse")
    if args.sigma < 0:
        raise UsageError(f"--sigma {args.sigma} must be >= 0")
    return NoiseSpec(kind=GAUSSIAN_KIND, sigma=args.sigma, seed=args.seed)


def _cmd_add_noise(args) -> int:
    spec = _noise_spec(args)
    noisy = apply_noise(read_image(args.input), spec)
    write_image(noisy, args.output)
    entries = {
        "command": "add-noise",
        "version": __version__,
        "input": args.input,
        "output": args.output,
        "kind": args.kind,
        "seed": args.seed,
    }
    if args.kind == "impulse":
        entries["p"] = f"{args.p:g}"
    else:
        entries["sigma"] = f"{args.sigma:g}"
    write_manifest(manifest_path_for(args.output), entries)
    return 0


def _cmd_denoise(args) -> int:
    try:
        geometry = PatchGeometry(patch_side=args.d, search_side=args.M,
                                 group_size=args.m, stride=args.stride)
        if args.alpha <= 0:
            raise ValueError(f"--alpha {args.alpha} must be positive")
        if args.t < 0:
            raise ValueError(f"--t {args.t} must be >= 0")
        if args.iters < 0:
            raise ValueError(f"--iters {args.iters} must be >= 0")
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    noisy = read_image(args.input)
    if args.method == "pwmf":
        output = pwmf(noisy, PwmfParams())
    elif args.method == "plr":
        output = plr_denoise(noisy, geometry, args.t, threads=args.threads)
    else:
        cfg = AdmmConfig(alpha=args.alpha, threshold=args.t,
                         geometry=geometry, iterations=args.iters)
        init = pwmf(noisy, PwmfParams())
        state = run_admm_state(noisy, cfg, init, threads=args.threads)
        output = state.u if args.emit == "u" else state.v

    write_image(output, args.output)
    entries = {
        "command": "denoise",
        "version": __version__,
        "input": args.input,
        "output": args.output,
        "method": args.method,
        "d": args.d,
        "M": args.M,
        "m": args.m,
        "t": f"{args.t:g}",
        "alpha": repr(args.alpha),
        "iters": args.iters,
        "stride": args.stride,
        "emit": args.emit,
        "threads": args.threads,
    }
    write_manifest(manifest_path_for(args.output), entries)
    if args.ref is not None:
        # PSNR is measured on the real-valued estimate, before export rounding.
        reference = read_image(args.ref)
        print(f"psnr_db={psnr(output, reference):.4f}")
    return 0


def _parse_levels(text: str) -> list[float]:
    try:
        levels = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"--p {text!r} is not a comma-separated float list") from None
    if not levels:
        raise UsageError("--p lists no noise levels")
    for level in levels:
        if not 0.0 <= level <= 1.0:
            raise UsageError(f"noise level {level} outside [0, 1]")
    return levels


def _cmd_bench(args) -> int:
    levels = _parse_levels(args.p)
    if not os.path.isdir(args.corpus):
        raise NotADirectoryError(f"{args.corpus} is not a directory")
    paths = []
    for pattern in ("*.pgm", "*.png"):
        paths.extend(glob.glob(os.path.join(args.corpus, pattern)))
    rows = run_bench(paths, levels, desk=args.desk, threads=args.threads)
    write_csv(rows, args.output)
    for row in rows:
        print(f"{row.image},{row.p:g},{row.method},{row.psnr_db:.4f},{row.seconds:.3f}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, ImageFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
