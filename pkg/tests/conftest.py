"""
Shared fixtures.
"""
import logging
import os

os.environ.setdefault('WAVELIQ_ENV', 'testing')

import numpy as np
import pytest

from waveliq.io.images import RasterImage, save_image
from waveliq.io.manifest import DatasetManifest, ManifestRecord
from waveliq.services.cache import cache


@pytest.fixture
def rng():
    """Seeded generator so every test sees the same data."""
    return np.random.default_rng(1234)


@pytest.fixture
def gray_image(rng):
    return RasterImage(rng.uniform(0.0, 1.0, size=(32, 32)))


@pytest.fixture
def rgb_image(rng):
    return RasterImage(rng.uniform(0.0, 1.0, size=(32, 32, 3)))


@pytest.fixture
def gradient_image():
    rows, cols = np.mgrid[0:32, 0:48]
    red = cols / 47.0
    green = rows / 31.0
    blue = 0.5 * (red + green)
    return RasterImage(np.stack([red, green, blue], axis=2))


@pytest.fixture
def constant_image():
    def make(value, shape=(32, 32, 3)):
        return RasterImage(np.full(shape, float(value)))
    return make


@pytest.fixture
def png_file(tmp_path):
    """Write a RasterImage as PNG and return its path."""
    def write(img, name='image.png'):
        path = tmp_path / name
        save_image(img, path)
        return path
    return write


@pytest.fixture
def manifest_factory(tmp_path, png_file, rng):
    """Build a DatasetManifest with ``count`` noisy variants of one reference."""
    def make(count=4, tag='noise'):
        ref = RasterImage(rng.uniform(0.2, 0.8, size=(24, 24, 3)))
        ref_path = png_file(ref, 'ref.png')
        records = []
        for index in range(count):
            noisy = np.clip(ref.pixels + (index + 1) * 0.03 * rng.standard_normal(ref.shape), 0, 1)
            dist_path = png_file(RasterImage(noisy), f"dist{index}.png")
            records.append(ManifestRecord(
                record_id=f"r{index}",
                ref_path=ref_path,
                dist_path=dist_path,
                mos=float(count - index),
                distortion_tag=tag,
            ))
        return DatasetManifest(records=tuple(records), name='synthetic', base_dir=tmp_path)
    return make


@pytest.fixture(autouse=True)
def clear_feature_cache():
    cache.clear()
    yield
    cache.clear()


@pytest.fixture
def restore_root_logger():
    """Undo handler changes made by setup_logging."""
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)
