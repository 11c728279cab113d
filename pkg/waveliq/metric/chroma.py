"""
Colour histograms and the Hellinger histogram distance.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from waveliq.errors import BadBinCount, ShapeMismatch

logger = logging.getLogger(__name__)

DEFAULT_BINS = 64


@dataclass(frozen=True, eq=False)
class ColorHistogram:
    """Per-channel normalized bin masses, shape (channels, bins)."""

    mass: np.ndarray = field(repr=False)

    def __post_init__(self):
        mass = np.asarray(self.mass, dtype=np.float64)
        if mass.ndim == 1:
            mass = mass[np.newaxis, :]
        if mass.ndim != 2 or mass.shape[1] < 2:
            raise BadBinCount(f"histogram needs at least 2 bins, got shape {mass.shape}")
        if np.any(mass < 0):
            raise ShapeMismatch("histogram mass must be non-negative")
        mass = np.ascontiguousarray(mass)
        mass.setflags(write=False)
        object.__setattr__(self, 'mass', mass)

    @property
    def channels(self):
        return self.mass.shape[0]

    @property
    def bins_per_channel(self):
        return self.mass.shape[1]


def histogram(img, bins=DEFAULT_BINS):
    """
    Per-channel histogram of a RasterImage.

    A sample v lands in bin min(floor(v * bins), bins - 1); counts are
    divided by the pixel count.
    """
    if bins < 2:
        raise BadBinCount(f"bins must be >= 2, got {bins}")

    pixels = getattr(img, 'pixels', img)
    pixels = np.asarray(pixels, dtype=np.float64)
    if pixels.ndim == 2:
        pixels = pixels[:, :, np.newaxis]
    flat = pixels.reshape(-1, pixels.shape[2])

    indices = np.minimum(np.floor(flat * bins).astype(np.int64), bins - 1)
    mass = np.stack([
        np.bincount(indices[:, channel], minlength=bins) for channel in range(flat.shape[1])
    ]).astype(np.float64)
    mass /= flat.shape[0]
    return ColorHistogram(mass)


def hellinger_weight(hr, hd):
    """
    Hellinger distance averaged over channels, in [0, 1].

    Per channel: (1 / sqrt(2)) * ||sqrt(hr) - sqrt(hd)||_2.
    """
    if hr.mass.shape != hd.mass.shape:
        raise ShapeMismatch(
            f"histograms differ: {hr.channels}x{hr.bins_per_channel} "
            f"vs {hd.channels}x{hd.bins_per_channel}"
        )
    difference = np.sqrt(hr.mass) - np.sqrt(hd.mass)
    per_channel = np.sqrt(np.sum(difference * difference, axis=1)) / np.sqrt(2.0)
    # rounding can push a disjoint pair a hair above 1
    return float(np.clip(np.mean(per_channel), 0.0, 1.0))
