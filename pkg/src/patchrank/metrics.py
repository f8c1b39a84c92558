"""Image quality and distance metrics."""

from __future__ import annotations

import math

import numpy as np

from .validation import as_float_image, check_same_shape

PEAK = 255.0


def psnr(estimate, reference) -> float:
    """Peak signal-to-noise ratio in dB for 8-bit-range grayscale images.

    Computed as ``20*log10(255/sqrt(mse))``, which is identical to the
    Frobenius-norm form ``20*log10(255*sqrt(n)/||e||_F)``.  Returns
    ``math.inf`` when the two images are identical.
    """
    a = as_float_image(estimate, "estimate")
    b = as_float_image(reference, "reference")
    check_same_shape(a, b)
    mse = float(np.mean((a - b) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / mse)


def l0_distance(a, b) -> int:
    """Number of positions where two images differ exactly."""
    x = as_float_image(a, "a")
    y = as_float_image(b, "b")
    check_same_shape(x, y)
    return int(np.count_nonzero(x != y))
