"""
Feature refinement: wavelet pyramid -> point set.

Every level contributes one point per spatial site of its site grid. For a
level whose subbands are H x W, the site grid is (H // 2) x (2 * (W // 4));
site (i, j) covers subband rows 2i..2i+1 and columns 2j..2j+1. Each point
holds, taken from the S_LL lineage:

    [low_weight  * a,
     high_weight * c_ad, high_weight * c_da, high_weight * c_dd,
     high_weight * pool|s_lh|, high_weight * pool|s_hl|, high_weight * pool|s_hh|,
     level]

where ``a`` is the mean of the two C_AA rows covering the site and ``pool``
is the 2x2 mean of absolute values over the site.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from waveliq.errors import ConfigMismatch

logger = logging.getLogger(__name__)

FEATURE_DIM = 8
COORDINATES = ('a', 'c_ad', 'c_da', 'c_dd', 's_lh', 's_hl', 's_hh', 'level')


@dataclass(frozen=True)
class RefineConfig:
    low_weight: float = 1.0
    high_weight: float = 1.0
    levels_used: tuple | None = None
    magnitude_only: bool = True

    def __post_init__(self):
        if self.low_weight < 0 or self.high_weight < 0:
            raise ConfigMismatch("refinement weights must be non-negative")
        if self.low_weight + self.high_weight <= 0:
            raise ConfigMismatch("low_weight + high_weight must be positive")
        if self.levels_used is not None:
            levels = tuple(int(level) for level in self.levels_used)
            if not levels:
                raise ConfigMismatch("levels_used must not be empty")
            if len(set(levels)) != len(levels):
                raise ConfigMismatch(f"levels_used repeats a level: {levels}")
            object.__setattr__(self, 'levels_used', levels)

    def resolve_levels(self, pyramid):
        """Selected levels, checked against the pyramid depth."""
        levels = self.levels_used or tuple(range(1, pyramid.depth + 1))
        for level in levels:
            if not 1 <= level <= pyramid.depth:
                raise ConfigMismatch(
                    f"level {level} requested but the pyramid has {pyramid.depth} levels"
                )
        return levels


@dataclass(frozen=True, eq=False)
class FeatureSet:
    """Finite set of equal-length real vectors."""

    points: np.ndarray = field(repr=False)
    origin: str = ''

    def __post_init__(self):
        points = np.asarray(self.points, dtype=np.float64)
        if points.ndim == 1:
            points = points.reshape(-1, 1)
        if points.ndim != 2:
            raise ConfigMismatch(f"points must be a 2-D array, got shape {points.shape}")
        if not np.all(np.isfinite(points)):
            raise ConfigMismatch("feature coordinates must be finite")
        points = np.ascontiguousarray(points)
        points.setflags(write=False)
        object.__setattr__(self, 'points', points)

    @property
    def dim(self):
        return self.points.shape[1]

    def __len__(self):
        return self.points.shape[0]

    def with_level(self, level):
        """Points whose trailing level tag equals ``level``."""
        mask = self.points[:, -1] == float(level)
        return FeatureSet(self.points[mask], origin=f"{self.origin}[L{level}]")

    def __repr__(self):
        return f"FeatureSet(n={len(self)}, dim={self.dim}, origin={self.origin!r})"


def site_grid(wavelet_level):
    """(rows, cols) of the site grid for one pyramid level."""
    height, width = wavelet_level.subbands.shape
    return height // 2, 2 * (width // 4)


def _checked_sites(pyramid, level):
    rows, cols = site_grid(pyramid.level(level))
    if rows == 0 or cols == 0:
        height, width = pyramid.level(level).subbands.shape
        raise ConfigMismatch(
            f"level {level} has no feature sites (subbands {width}x{height}); "
            "use a larger image or fewer levels"
        )
    return rows, cols


def feature_count(pyramid, cfg):
    """Number of points refine() would emit, computed from shapes only."""
    total = 0
    for level in cfg.resolve_levels(pyramid):
        rows, cols = _checked_sites(pyramid, level)
        total += rows * cols
    return total


def _approx_to_sites(grid, rows, cols):
    pair_mean = (grid[0:2 * rows:2, :] + grid[1:2 * rows:2, :]) / 2
    return np.repeat(pair_mean, 2, axis=1)[:, :cols]


def _pool_abs(grid, rows, cols):
    block = np.abs(grid[:2 * rows, :2 * cols])
    return block.reshape(rows, 2, cols, 2).mean(axis=(1, 3))


def _level_points(wavelet_level, rows, cols, cfg, verbatim_eq9):
    quad = wavelet_level.low['quad']
    subbands = wavelet_level.subbands

    approx = _approx_to_sites(quad.c_aa, rows, cols)
    if verbatim_eq9:
        c_da = _approx_to_sites(quad.c_da, rows, cols)
    else:
        c_da = quad.c_da[:rows, :cols]
    details = [
        quad.c_ad[:rows, :cols],
        c_da,
        quad.c_dd[:rows, :cols],
        _pool_abs(subbands.s_lh, rows, cols),
        _pool_abs(subbands.s_hl, rows, cols),
        _pool_abs(subbands.s_hh, rows, cols),
    ]
    if cfg.magnitude_only:
        approx = np.abs(approx)
        details = [np.abs(detail) for detail in details]

    columns = [cfg.low_weight * approx] + [cfg.high_weight * detail for detail in details]
    columns.append(np.full((rows, cols), float(wavelet_level.level)))
    return np.stack([column.reshape(-1) for column in columns], axis=1)


def refine(pyramid, cfg=None, origin=''):
    """
    Turn a pyramid into a FeatureSet.

    Args:
        pyramid: WaveletPyramid
        cfg: RefineConfig (defaults: unit weights, all levels, magnitudes)
        origin: Free-form label stored on the result

    Raises:
        ConfigMismatch: A selected level is missing or has no sites
    """
    cfg = cfg or RefineConfig()
    levels = cfg.resolve_levels(pyramid)

    blocks = []
    for level in levels:
        rows, cols = _checked_sites(pyramid, level)
        blocks.append(_level_points(pyramid.level(level), rows, cols, cfg, pyramid.verbatim_eq9))

    points = np.concatenate(blocks, axis=0)
    label = f"{origin};levels={','.join(str(level) for level in levels)}"
    logger.debug(f"Refined {points.shape[0]} points from levels {levels}")
    return FeatureSet(points, origin=label)
