import numpy as np
import pytest

from helpers import phantom_corpus, phantom_slopes
from patchrank import PwmfParams, add_impulse_noise, psnr, pwmf, road, road_map


class TestParams:
    def test_defaults(self):
        prm = PwmfParams()
        assert (prm.road_neighbors, prm.road_scale) == (4, 40.0)
        assert (prm.patch_side, prm.search_side, prm.patch_scale, prm.passes) == (3, 11, 30.0, 2)

    def test_invariants(self):
        with pytest.raises(ValueError):
            PwmfParams(road_neighbors=9)
        with pytest.raises(ValueError):
            PwmfParams(search_side=3, patch_side=5)
        with pytest.raises(ValueError):
            PwmfParams(patch_side=4)
        with pytest.raises(ValueError):
            PwmfParams(passes=0)
        with pytest.raises(ValueError):
            PwmfParams(road_scale=0.0)


class TestRoad:
    def test_constant_image_is_zero(self):
        img = np.full((9, 9), 57.0)
        assert road(img, (4, 4)) == 0.0
        assert np.all(road_map(img) == 0.0)

    def test_single_impulse_statistic(self):
        img = np.zeros((9, 9))
        img[4, 4] = 255.0
        assert road(img, (4, 4)) == 4 * 255.0
        # any 8-neighbor of the impulse still has four zero differences
        assert road(img, (4, 5)) == 0.0
        assert road(img, (3, 3)) == 0.0

    def test_scalar_matches_vectorized_map(self):
        rng = np.random.default_rng(17)
        img = rng.integers(0, 256, (12, 10)).astype(float)
        rmap = road_map(img)
        for r in (0, 1, 5, 11):
            for c in (0, 3, 9):
                assert road(img, (r, c)) == pytest.approx(rmap[r, c], abs=1e-12)

    def test_border_uses_mirror_reflection(self):
        img = np.zeros((5, 5))
        img[0, 0] = 100.0
        # corner pixel: neighbors reflect to row/col 1, none equal itself
        assert road(img, (0, 0)) == 400.0

    def test_position_validated(self):
        with pytest.raises(ValueError):
            road(np.zeros((4, 4)), (4, 0))


class TestPwmf:
    def test_clean_constant_image_unchanged(self):
        img = np.full((16, 16), 100.0)
        assert np.array_equal(pwmf(img, PwmfParams()), img)

    def test_single_impulse_restored(self):
        img = np.full((21, 21), 50.0)
        img[10, 10] = 255.0
        out = pwmf(img, PwmfParams())
        assert abs(out[10, 10] - 50.0) <= 1.0

    def test_output_within_input_range(self):
        clean = phantom_corpus(64)["blocks"]
        noisy = add_impulse_noise(clean, 0.4, seed=5)
        out = pwmf(noisy, PwmfParams())
        assert out.min() >= noisy.min() - 1e-9
        assert out.max() <= noisy.max() + 1e-9

    def test_mild_on_smooth_clean_image(self):
        img = phantom_slopes(128)
        out = pwmf(img, PwmfParams())
        assert np.max(np.abs(out - img)) <= 5.0

    def test_impulse_denoising_gain(self):
        clean = phantom_corpus(128)["rings"]
        noisy = add_impulse_noise(clean, 0.3, seed=31)
        out = pwmf(noisy, PwmfParams())
        assert psnr(out, clean) >= psnr(noisy, clean) + 8.0

    def test_deterministic_rerun(self):
        clean = phantom_corpus(48)["waves"]
        noisy = add_impulse_noise(clean, 0.3, seed=2)
        assert np.array_equal(pwmf(noisy, PwmfParams()), pwmf(noisy, PwmfParams()))

    def test_single_pass_differs_from_two(self):
        clean = phantom_corpus(48)["rings"]
        noisy = add_impulse_noise(clean, 0.3, seed=4)
        one = pwmf(noisy, PwmfParams(passes=1))
        two = pwmf(noisy, PwmfParams(passes=2))
        assert not np.array_equal(one, two)

    def test_small_image_rejected(self):
        with pytest.raises(ValueError):
            pwmf(np.zeros((8, 8)), PwmfParams())
