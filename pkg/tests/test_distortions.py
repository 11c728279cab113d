import numpy as np
import pytest

from waveliq.bench.distortions import (
    BLUR_SIGMAS,
    CONTRAST_FACTORS,
    LEVELS,
    NOISE_SIGMAS,
    Distortion,
    ladder,
    reference_pattern,
    synthesize,
)
from waveliq.errors import ConfigMismatch
from waveliq.io.images import RasterImage


@pytest.fixture
def mid_range_image(rng):
    return RasterImage(rng.uniform(0.2, 0.8, size=(40, 40, 3)))


@pytest.mark.unit
class TestLadderConstants:
    def test_five_levels_per_kind(self):
        assert LEVELS == (1, 2, 3, 4, 5)
        assert NOISE_SIGMAS == pytest.approx([2 / 255, 4 / 255, 8 / 255, 16 / 255, 32 / 255])
        assert BLUR_SIGMAS == (0.6, 1.2, 2.4, 4.8, 9.6)
        assert CONTRAST_FACTORS == (0.8, 0.6, 0.45, 0.3, 0.15)


@pytest.mark.unit
class TestNoise:
    def test_deviation_grows_with_level(self, mid_range_image):
        deviations = [
            np.mean(np.abs(synthesize(mid_range_image, 'noise', level, seed=7).pixels
                           - mid_range_image.pixels))
            for level in LEVELS
        ]
        assert all(a < b for a, b in zip(deviations, deviations[1:]))

    def test_deterministic_per_seed(self, mid_range_image):
        first = synthesize(mid_range_image, Distortion.GAUSSIAN_NOISE, 3, seed=11)
        second = synthesize(mid_range_image, Distortion.GAUSSIAN_NOISE, 3, seed=11)
        other = synthesize(mid_range_image, Distortion.GAUSSIAN_NOISE, 3, seed=12)
        assert np.array_equal(first.pixels, second.pixels)
        assert not np.array_equal(first.pixels, other.pixels)

    def test_stays_in_unit_range(self, constant_image):
        noisy = synthesize(constant_image(1.0), 'noise', 5, seed=0)
        assert noisy.pixels.min() >= 0.0
        assert noisy.pixels.max() <= 1.0

    def test_strongest_level_changes_almost_every_pixel(self, mid_range_image):
        noisy = synthesize(mid_range_image, 'noise', 5, seed=0)
        before = np.round(mid_range_image.pixels * 255)
        after = np.round(noisy.pixels * 255)
        changed = np.any(before != after, axis=2)
        assert changed.mean() >= 0.99


@pytest.mark.unit
class TestBlur:
    def test_constant_image_is_unchanged(self, constant_image):
        blurred = synthesize(constant_image(0.4), 'blur', 5)
        np.testing.assert_allclose(blurred.pixels, 0.4, rtol=0, atol=1e-12)

    def test_smooths_more_at_higher_levels(self):
        # 96 px exceeds the widest kernel support, so edge clamping cannot add spread back
        pattern = reference_pattern(seed=3)
        spreads = [np.std(synthesize(pattern, 'blur', level).pixels, axis=(0, 1)).mean()
                   for level in LEVELS]
        assert all(a > b for a, b in zip(spreads, spreads[1:]))

    def test_channels_are_blurred_independently(self, rng):
        img = RasterImage(np.stack([rng.uniform(size=(20, 20)), np.full((20, 20), 0.3),
                                    np.full((20, 20), 0.9)], axis=2))
        blurred = synthesize(img, 'blur', 2)
        np.testing.assert_allclose(blurred.pixels[:, :, 1], 0.3, atol=1e-12)
        np.testing.assert_allclose(blurred.pixels[:, :, 2], 0.9, atol=1e-12)

    def test_grayscale_input(self, gray_image):
        assert synthesize(gray_image, 'blur', 1).shape == gray_image.shape


@pytest.mark.unit
class TestContrast:
    def test_mid_grey_is_fixed(self, constant_image):
        for level in LEVELS:
            assert np.all(synthesize(constant_image(0.5), 'contrast', level).pixels == 0.5)

    def test_white_example(self, constant_image):
        scaled = synthesize(constant_image(1.0), 'contrast', 1)
        np.testing.assert_allclose(scaled.pixels, 0.9)

    def test_range_shrinks(self, mid_range_image):
        ranges = [np.ptp(synthesize(mid_range_image, 'contrast', level).pixels) for level in LEVELS]
        assert all(a > b for a, b in zip(ranges, ranges[1:]))


@pytest.mark.unit
class TestSynthesize:
    def test_invalid_level(self, mid_range_image):
        with pytest.raises(ConfigMismatch):
            synthesize(mid_range_image, 'noise', 6)

    def test_unknown_kind(self, mid_range_image):
        with pytest.raises(ConfigMismatch):
            synthesize(mid_range_image, 'jpeg', 1)

    def test_ladder_covers_every_kind_and_level(self, mid_range_image):
        steps = list(ladder(mid_range_image, seed=0))
        assert len(steps) == 15
        assert {(kind, level) for kind, level, _ in steps} == {
            (kind, level) for kind in Distortion for level in LEVELS
        }
        assert all(image.shape == mid_range_image.shape for _, _, image in steps)

    def test_reference_pattern_is_deterministic(self):
        first, second = reference_pattern(32, 40, seed=3), reference_pattern(32, 40, seed=3)
        assert first.shape == (32, 40, 3)
        assert np.array_equal(first.pixels, second.pixels)
        assert not np.array_equal(first.pixels, reference_pattern(32, 40, seed=4).pixels)
