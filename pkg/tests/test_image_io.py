import re

import numpy as np
import pytest

from helpers import random_integer_image
from patchrank import (
    MalformedDataError,
    MalformedHeaderError,
    TruncatedDataError,
    UnsupportedFormatError,
    UnsupportedMaxvalError,
    quantize,
    read_image,
    write_image,
)


class TestReadPgm:
    def test_ascii_minimal(self, tmp_path):
        path = tmp_path / "a.pgm"
        path.write_bytes(b"P2\n2 1\n255\n0 255\n")
        img = read_image(path)
        assert img.shape == (1, 2)
        assert img.tolist() == [[0.0, 255.0]]

    def test_ascii_with_comments_and_odd_whitespace(self, tmp_path):
        path = tmp_path / "c.pgm"
        path.write_bytes(b"P2 # magic\n# a comment line\n 2\t2 #dims\n255\n1 2\n3 4")
        assert read_image(path).tolist() == [[1.0, 2.0], [3.0, 4.0]]

    def test_binary_round_trip_is_byte_identical(self, tmp_path):
        img = random_integer_image(np.random.default_rng(0), 9, 13)
        path = tmp_path / "b.pgm"
        write_image(img, path)
        first = path.read_bytes()
        back = read_image(path)
        assert np.array_equal(back, img)
        write_image(back, path)
        assert path.read_bytes() == first

    def test_binary_pixel_count_enforced(self, tmp_path):
        path = tmp_path / "t.pgm"
        path.write_bytes(b"P5\n2 2\n255\n\x00\x01\x02")  # one byte short
        with pytest.raises(TruncatedDataError) as err:
            read_image(path)
        assert err.value.code == "truncated-data"

    def test_ascii_truncated(self, tmp_path):
        path = tmp_path / "t2.pgm"
        path.write_bytes(b"P2\n2 2\n255\n1 2 3\n")
        with pytest.raises(TruncatedDataError):
            read_image(path)

    def test_wrong_maxval(self, tmp_path):
        path = tmp_path / "m.pgm"
        path.write_bytes(b"P5\n1 1\n65535\n\x00\x00")
        with pytest.raises(UnsupportedMaxvalError) as err:
            read_image(path)
        assert err.value.code == "unsupported-maxval"

    def test_malformed_header(self, tmp_path):
        for payload in (b"NOTPGM\n", b"P2\nx 2\n255\n1 2\n", b"P5\n2\n"):
            path = tmp_path / "h.pgm"
            path.write_bytes(payload)
            with pytest.raises(MalformedHeaderError) as err:
                read_image(path)
            assert err.value.code == "malformed-header"

    def test_unsupported_pnm_flavor(self, tmp_path):
        path = tmp_path / "p6.pgm"
        path.write_bytes(b"P6\n1 1\n255\n\x00\x00\x00")
        with pytest.raises(UnsupportedFormatError):
            read_image(path)

    def test_ascii_sample_above_maxval(self, tmp_path):
        path = tmp_path / "v.pgm"
        path.write_bytes(b"P2\n1 1\n255\n300\n")
        with pytest.raises(MalformedDataError):
            read_image(path)

    def test_distinct_error_codes(self):
        codes = {
            MalformedHeaderError("x").code,
            UnsupportedMaxvalError("x").code,
            TruncatedDataError("x").code,
        }
        assert len(codes) == 3


class TestWriteImage:
    def test_quantize_rules(self):
        img = np.array([[255.7, 127.5, -3.0, 100.2]])
        assert quantize(img).tolist() == [[255, 128, 0, 100]]

    def test_written_file_passes_external_validation(self, tmp_path):
        img = random_integer_image(np.random.default_rng(1), 5, 7)
        path = tmp_path / "v.pgm"
        write_image(img, path)
        blob = path.read_bytes()
        match = re.match(rb"P5\n(\d+) (\d+)\n255\n", blob)
        assert match is not None
        width, height = int(match.group(1)), int(match.group(2))
        assert (width, height) == (7, 5)
        assert len(blob) - match.end() == width * height

    def test_png_round_trip(self, tmp_path):
        img = random_integer_image(np.random.default_rng(2), 6, 8)
        path = tmp_path / "x.png"
        write_image(img, path)
        assert np.array_equal(read_image(path), img)

    def test_png_non_grayscale_rejected(self, tmp_path):
        from PIL import Image

        path = tmp_path / "rgb.png"
        Image.new("RGB", (4, 4)).save(path)
        with pytest.raises(UnsupportedFormatError):
            read_image(path)

    def test_missing_file_raises_oserror(self, tmp_path):
        with pytest.raises(OSError):
            read_image(tmp_path / "absent.pgm")
