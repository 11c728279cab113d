import numpy as np
import pytest

from waveliq.errors import BadBinCount, ShapeMismatch
from waveliq.io.images import RasterImage
from waveliq.metric.chroma import ColorHistogram, hellinger_weight, histogram


def random_histogram(rng, channels=3, bins=16):
    mass = rng.uniform(size=(channels, bins)) ** 3
    return ColorHistogram(mass / mass.sum(axis=1, keepdims=True))


@pytest.mark.unit
class TestHistogram:
    def test_black_image(self):
        hist = histogram(RasterImage(np.zeros((4, 4, 3))), bins=64)
        assert hist.channels == 3
        assert hist.bins_per_channel == 64
        assert np.all(hist.mass[:, 0] == 1.0)
        assert np.all(hist.mass[:, 1:] == 0.0)

    def test_one_lands_in_last_bin(self):
        hist = histogram(RasterImage(np.ones((2, 2))), bins=8)
        assert hist.mass[0, 7] == 1.0

    def test_two_pixel_example(self):
        hist = histogram(RasterImage(np.array([[0.1, 0.9]])), bins=4)
        assert hist.mass[0].tolist() == [0.5, 0.0, 0.0, 0.5]

    def test_mass_sums_to_one(self, rgb_image):
        hist = histogram(rgb_image, bins=32)
        np.testing.assert_allclose(hist.mass.sum(axis=1), 1.0, atol=1e-9)

    def test_pixel_order_does_not_matter(self, rng, rgb_image):
        flat = rgb_image.pixels.reshape(-1, 3)
        shuffled = RasterImage(flat[rng.permutation(flat.shape[0])].reshape(rgb_image.shape))
        assert np.array_equal(histogram(rgb_image).mass, histogram(shuffled).mass)

    def test_too_few_bins(self, gray_image):
        with pytest.raises(BadBinCount):
            histogram(gray_image, bins=1)


@pytest.mark.unit
class TestHellinger:
    def test_identical(self, rgb_image):
        hist = histogram(rgb_image)
        assert hellinger_weight(hist, hist) == 0.0

    def test_disjoint_one_hot(self):
        black = histogram(RasterImage(np.zeros((2, 2, 3))))
        white = histogram(RasterImage(np.ones((2, 2, 3))))
        assert hellinger_weight(black, white) == pytest.approx(1.0, abs=1e-12)

    def test_worked_value(self):
        value = hellinger_weight(ColorHistogram([[0.5, 0.5]]), ColorHistogram([[1.0, 0.0]]))
        assert value == pytest.approx(0.5412, abs=1e-4)

    def test_channel_mismatch(self):
        with pytest.raises(ShapeMismatch):
            hellinger_weight(ColorHistogram(np.full((3, 4), 0.25)), ColorHistogram(np.full((1, 4), 0.25)))

    def test_bin_mismatch(self):
        with pytest.raises(ShapeMismatch):
            hellinger_weight(ColorHistogram(np.full((1, 4), 0.25)), ColorHistogram(np.full((1, 2), 0.5)))

    def test_properties_on_random_pairs(self, rng):
        for _ in range(500):
            a, b = random_histogram(rng), random_histogram(rng)
            value = hellinger_weight(a, b)
            assert 0.0 <= value <= 1.0
            assert value == hellinger_weight(b, a)
            assert hellinger_weight(a, a) == 0.0
            assert value > 1e-12
