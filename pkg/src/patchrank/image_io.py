"""Grayscale image file I/O: PGM P2/P5 (maxval 255) plus optional 8-bit PNG.

PGM is the interchange format because it is trivially byte-exact; PNG support
is a convenience for common corpora and requires Pillow.
"""

from __future__ import annotations

import os

import numpy as np

from .validation import as_float_image


class ImageFormatError(ValueError):
    """Unreadable or unsupported image file; ``code`` names the failure."""

    code = "image-format"

    def __init__(self, message: str):
        super().__init__(f"{self.code}: {message}")


class MalformedHeaderError(ImageFormatError):
    code = "malformed-header"


class UnsupportedMaxvalError(ImageFormatError):
    code = "unsupported-maxval"


class TruncatedDataError(ImageFormatError):
    code = "truncated-data"


class MalformedDataError(ImageFormatError):
    code = "malformed-data"


class UnsupportedFormatError(ImageFormatError):
    code = "unsupported-format"


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    # Skip whitespace and '#' comments, then collect one token.
    n = len(data)
    while pos < n:
        ch = data[pos]
        if ch in b"#":
            while pos < n and data[pos] not in b"\r\n":
                pos += 1
        elif ch in b" \t\r\n\f\v":
            pos += 1
        else:
            break
    if pos >= n:
        raise MalformedHeaderError("unexpected end of file in header")
    start = pos
    while pos < n and data[pos] not in b" \t\r\n\f\v#":
        pos += 1
    return data[start:pos], pos


def _header_int(data: bytes, pos: int, what: str) -> tuple[int, int]:
    token, pos = _next_token(data, pos)
    if not token.isdigit():
        raise MalformedHeaderError(f"{what} is not a decimal integer: {token!r}")
    return int(token), pos


def _read_pgm(data: bytes) -> np.ndarray:
    magic, pos = _next_token(data, 0)
    if magic in (b"P1", b"P3", b"P4", b"P6"):
        raise UnsupportedFormatError(f"PNM type {magic.decode()} is not grayscale PGM")
    if magic not in (b"P2", b"P5"):
        raise MalformedHeaderError(f"not a PGM file (magic {magic[:16]!r})")
    width, pos = _header_int(data, pos, "width")
    height, pos = _header_int(data, pos, "height")
    maxval, pos = _header_int(data, pos, "maxval")
    if width < 1 or height < 1:
        raise MalformedHeaderError(f"invalid dimensions {width}x{height}")
    if maxval != 255:
        raise UnsupportedMaxvalError(f"maxval {maxval} unsupported, expected 255")
    count = width * height

    if magic == b"P5":
        if pos >= len(data) or data[pos] not in b" \t\r\n\f\v":
            raise MalformedHeaderError("missing whitespace after maxval")
        pos += 1
        raster = data[pos : pos + count]
        if len(raster) < count:
            raise TruncatedDataError(f"expected {count} raster bytes, found {len(raster)}")
        pixels = np.frombuffer(raster, dtype=np.uint8)
    else:
        values = []
        for _ in range(count):
            try:
                token, pos = _next_token(data, pos)
            except MalformedHeaderError:
                raise TruncatedDataError(
                    f"expected {count} ASCII samples, found {len(values)}"
                ) from None
            if not token.isdigit():
                raise MalformedDataError(f"non-numeric sample {token!r}")
            value = int(token)
            if value > maxval:
                raise MalformedDataError(f"sample {value} exceeds maxval {maxval}")
            values.append(value)
        pixels = np.array(values, dtype=np.uint8)
    return pixels.reshape(height, width).astype(np.float64)


def _read_png(path: str) -> np.ndarray:
    from PIL import Image

    with Image.open(path) as im:
        if im.mode != "L":
            raise UnsupportedFormatError(f"PNG mode {im.mode!r} unsupported, expected 8-bit grayscale")
        return np.asarray(im, dtype=np.uint8).astype(np.float64)


def read_image(path) -> np.ndarray:
    """Load a grayscale image as a float64 array with values in 0..255."""
    path = os.fspath(path)
    if path.lower().endswith(".png"):
        return _read_png(path)
    with open(path, "rb") as fh:
        return _read_pgm(fh.read())


def quantize(img) -> np.ndarray:
    """Clamp to [0, 255] and round half-up to 8-bit levels."""
    x = as_float_image(img)
    return np.floor(np.clip(x, 0.0, 255.0) + 0.5).astype(np.uint8)


def write_image(img, path) -> None:
    """Write as binary PGM (P5, maxval 255), or 8-bit PNG for ``.png`` paths.

    Intensities are clamped and rounded half-up at export; callers computing
    metrics should do so on the real-valued array before writing.
    """
    path = os.fspath(path)
    data = quantize(img)
    if path.lower().endswith(".png"):
        from PIL import Image

        Image.fromarray(data, mode="L").save(path, format="PNG")
        return
    height, width = data.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{width} {height}\n255\n".encode("ascii"))
        fh.write(data.tobytes())
