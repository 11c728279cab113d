"""
Synthetic distortion ladders: five severities of Gaussian noise, Gaussian
blur and contrast reduction.
"""

import enum

import numpy as np
from scipy.ndimage import gaussian_filter

from waveliq.errors import ConfigMismatch
from waveliq.io.images import RasterImage

LEVELS = (1, 2, 3, 4, 5)
NOISE_SIGMAS = tuple(value / 255.0 for value in (2, 4, 8, 16, 32))
BLUR_SIGMAS = (0.6, 1.2, 2.4, 4.8, 9.6)
CONTRAST_FACTORS = (0.8, 0.6, 0.45, 0.3, 0.15)
BLUR_TRUNCATE = 3.0


class Distortion(enum.Enum):
    GAUSSIAN_NOISE = 'noise'
    GAUSSIAN_BLUR = 'blur'
    CONTRAST_SCALE = 'contrast'

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ConfigMismatch(f"unknown distortion {value!r}") from None


def _add_noise(pixels, level, seed):
    rng = np.random.default_rng(seed)
    # same field at every level, so deviation grows with sigma
    field = rng.standard_normal(pixels.shape)
    return np.clip(pixels + NOISE_SIGMAS[level - 1] * field, 0.0, 1.0)


def _blur(pixels, level):
    sigma = BLUR_SIGMAS[level - 1]
    blurred = gaussian_filter(pixels, sigma=(sigma, sigma, 0.0), mode='nearest',
                              truncate=BLUR_TRUNCATE)
    return np.clip(blurred, 0.0, 1.0)


def _scale_contrast(pixels, level):
    return 0.5 + CONTRAST_FACTORS[level - 1] * (pixels - 0.5)


def synthesize(ref, kind, level, seed=0):
    """
    Distort ``ref`` at severity ``level`` (1 mildest, 5 strongest).

    Output is a function of (ref, kind, level, seed) only.
    """
    kind = Distortion.parse(kind)
    if level not in LEVELS:
        raise ConfigMismatch(f"level must be one of {LEVELS}, got {level}")

    pixels = np.array(ref.pixels, dtype=np.float64)
    if kind is Distortion.GAUSSIAN_NOISE:
        out = _add_noise(pixels, level, seed)
    elif kind is Distortion.GAUSSIAN_BLUR:
        out = _blur(pixels, level)
    else:
        out = _scale_contrast(pixels, level)
    return RasterImage(out)


def ladder(ref, seed=0):
    """Yield (kind, level, image) for every kind and level."""
    for kind in Distortion:
        for level in LEVELS:
            yield kind, level, synthesize(ref, kind, level, seed)


def reference_pattern(height=96, width=96, seed=0):
    """
    Deterministic RGB reference with smooth colour ramps, oriented texture
    and a little grain, for ladders when no photographs are at hand.
    """
    rng = np.random.default_rng(seed)
    rows, cols = np.mgrid[0:height, 0:width].astype(np.float64)
    rows /= max(height - 1, 1)
    cols /= max(width - 1, 1)

    channels = []
    for _ in range(3):
        ramp = rng.uniform(0.2, 0.8) + rng.uniform(-0.3, 0.3) * cols + rng.uniform(-0.3, 0.3) * rows
        angle = rng.uniform(0.0, np.pi)
        frequency = rng.uniform(4.0, 12.0)
        phase = 2 * np.pi * frequency * (np.cos(angle) * cols + np.sin(angle) * rows)
        texture = 0.12 * np.sin(phase) * (rows > rng.uniform(0.2, 0.6))
        channels.append(ramp + texture)
    pixels = np.stack(channels, axis=2) + 0.02 * rng.standard_normal((height, width, 3))
    return RasterImage(np.clip(pixels, 0.0, 1.0))
