"""
Multiscale Haar-style wavelet decomposition.

Each level runs three stages on its input grid:

1. valid-mode 2x2 correlation with four filters -> S_LL, S_LH, S_HL, S_HH,
   each of shape (h-1, w-1);
2. every subband is split into approximation C_A (column-pair means) and
   detail C_D (row-pair differences);
3. C_A and C_D are split again into C_AA, C_AD, C_DA, C_DD.

Level k+1 repeats the three stages on level k's S_LL. Trailing odd rows or
columns are dropped at every split.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from waveliq.errors import ConfigMismatch, GridTooSmall, ImageTooSmall
from waveliq.io.tensors import write_tensor

logger = logging.getLogger(__name__)

SUBBANDS = ('ll', 'lh', 'hl', 'hh')
QUAD_COMPONENTS = ('c_aa', 'c_ad', 'c_da', 'c_dd')

MIN_LEVEL_INPUT = (4, 4)
MAX_LEVELS = 4


@dataclass(frozen=True, eq=False)
class FilterBank:
    f_ll: np.ndarray
    f_lh: np.ndarray
    f_hl: np.ndarray
    f_hh: np.ndarray

    def __post_init__(self):
        for name in ('f_ll', 'f_lh', 'f_hl', 'f_hh'):
            kernel = np.asarray(getattr(self, name), dtype=np.float64)
            if kernel.shape != (2, 2):
                raise ConfigMismatch(f"{name} must be 2x2, got {kernel.shape}")
            kernel.setflags(write=False)
            object.__setattr__(self, name, kernel)

    def kernels(self):
        return {'ll': self.f_ll, 'lh': self.f_lh, 'hl': self.f_hl, 'hh': self.f_hh}


def default_filters():
    """Haar analysis bank: averaging low-pass, half-weighted differences."""
    return FilterBank(
        f_ll=0.25 * np.array([[1.0, 1.0], [1.0, 1.0]]),
        f_lh=0.5 * np.array([[1.0, -1.0], [1.0, -1.0]]),
        f_hl=0.5 * np.array([[1.0, 1.0], [-1.0, -1.0]]),
        f_hh=0.5 * np.array([[1.0, -1.0], [-1.0, 1.0]]),
    )


@dataclass(frozen=True, eq=False)
class SubbandSet:
    s_ll: np.ndarray = field(repr=False)
    s_lh: np.ndarray = field(repr=False)
    s_hl: np.ndarray = field(repr=False)
    s_hh: np.ndarray = field(repr=False)

    def get(self, name):
        return getattr(self, f"s_{name}")

    @property
    def shape(self):
        return self.s_ll.shape


@dataclass(frozen=True, eq=False)
class CoeffPair:
    c_a: np.ndarray = field(repr=False)
    c_d: np.ndarray = field(repr=False)


@dataclass(frozen=True, eq=False)
class CoeffQuad:
    c_aa: np.ndarray = field(repr=False)
    c_ad: np.ndarray = field(repr=False)
    c_da: np.ndarray = field(repr=False)
    c_dd: np.ndarray = field(repr=False)


@dataclass(frozen=True, eq=False)
class WaveletLevel:
    level: int
    subbands: SubbandSet
    pairs: dict
    quads: dict

    @property
    def low(self):
        """S_LL lineage (the W^L partition)."""
        return {'subband': self.subbands.s_ll, 'pair': self.pairs['ll'], 'quad': self.quads['ll']}

    @property
    def high(self):
        """S_LH, S_HL and S_HH lineages (the W^H partition)."""
        return {
            name: {'subband': self.subbands.get(name), 'pair': self.pairs[name], 'quad': self.quads[name]}
            for name in SUBBANDS[1:]
        }


@dataclass(frozen=True, eq=False)
class WaveletPyramid:
    levels: tuple
    input_shape: tuple
    verbatim_eq9: bool = False

    def __post_init__(self):
        if not self.levels:
            raise ConfigMismatch("a pyramid needs at least one level")

    @property
    def depth(self):
        return len(self.levels)

    def level(self, index):
        """1-based level access."""
        return self.levels[index - 1]


def _as_grid(img):
    grid = getattr(img, 'pixels', img)
    grid = np.asarray(grid, dtype=np.float64)
    if grid.ndim != 2:
        raise ConfigMismatch(f"expected a single-channel grid, got shape {grid.shape}")
    return grid


def _frozen(array):
    array = np.ascontiguousarray(array)
    array.setflags(write=False)
    return array


def _correlate_valid(grid, kernel):
    # accumulation order (0,0), (0,1), (1,0), (1,1) is part of the contract
    out = kernel[0, 0] * grid[:-1, :-1]
    out = out + kernel[0, 1] * grid[:-1, 1:]
    out = out + kernel[1, 0] * grid[1:, :-1]
    out = out + kernel[1, 1] * grid[1:, 1:]
    return out


def convolve_subbands(img, bank=None):
    """Valid-mode 2x2 correlation of ``img`` with each kernel; no padding, stride 1."""
    bank = bank or default_filters()
    grid = _as_grid(img)
    if grid.shape[0] < 2 or grid.shape[1] < 2:
        raise ImageTooSmall(grid.shape, level=1, minimum=(2, 2))

    bands = {name: _frozen(_correlate_valid(grid, kernel)) for name, kernel in bank.kernels().items()}
    return SubbandSet(s_ll=bands['ll'], s_lh=bands['lh'], s_hl=bands['hl'], s_hh=bands['hh'])


def _column_means(grid):
    half = grid.shape[1] // 2
    return (grid[:, 0:2 * half:2] + grid[:, 1:2 * half:2]) / 2


def _row_differences(grid):
    half = grid.shape[0] // 2
    return grid[0:2 * half:2, :] - grid[1:2 * half:2, :]


def _column_differences(grid):
    half = grid.shape[1] // 2
    return grid[:, 0:2 * half:2] - grid[:, 1:2 * half:2]


def split_pair(s):
    """
    Split a subband into approximation and detail coefficients.

    c_a averages column pairs (height kept, width halved); c_d differences
    row pairs (height halved, width kept). A component whose split axis has
    fewer than two samples comes back empty.
    """
    grid = np.asarray(s, dtype=np.float64)
    height, width = grid.shape
    if height == 0 or width == 0 or (height < 2 and width < 2):
        raise GridTooSmall(grid.shape)
    return CoeffPair(c_a=_frozen(_column_means(grid)), c_d=_frozen(_row_differences(grid)))


def split_quad(pair, verbatim_eq9=False):
    """
    Split a coefficient pair into C_AA, C_AD, C_DA, C_DD.

    C_DA is the row-pair difference of C_A. With ``verbatim_eq9`` the
    self-difference C_A(i, 2j-1) - C_A(i, 2j-1) is used instead, which is
    identically zero and shaped like C_AA.
    """
    c_a, c_d = pair.c_a, pair.c_d
    if verbatim_eq9:
        half = c_a.shape[1] // 2
        c_da = c_a[:, 0:2 * half:2] - c_a[:, 0:2 * half:2]
    else:
        c_da = _row_differences(c_a)

    quad = CoeffQuad(
        c_aa=_frozen(_column_means(c_a)),
        c_ad=_frozen(_column_differences(c_d) / 2),
        c_da=_frozen(c_da),
        c_dd=_frozen(_column_differences(c_d)),
    )
    if all(getattr(quad, name).size == 0 for name in QUAD_COMPONENTS):
        raise GridTooSmall(c_a.shape)
    return quad


def decompose(img, bank=None, levels=2, verbatim_eq9=False):
    """
    Build a WaveletPyramid.

    Args:
        img: LumaImage or 2-D array
        bank: FilterBank, Haar-style by default
        levels: Number of levels (>= 1)
        verbatim_eq9: Use the identically-zero self-difference C_DA

    Raises:
        ImageTooSmall: A level's input is smaller than 4x4 (reports the level)
    """
    if levels < 1:
        raise ConfigMismatch(f"levels must be >= 1, got {levels}")
    bank = bank or default_filters()
    grid = _as_grid(img)
    input_shape = grid.shape

    built = []
    for level in range(1, levels + 1):
        if grid.shape[0] < MIN_LEVEL_INPUT[0] or grid.shape[1] < MIN_LEVEL_INPUT[1]:
            raise ImageTooSmall(grid.shape, level=level, minimum=MIN_LEVEL_INPUT)
        subbands = convolve_subbands(grid, bank)
        pairs = {name: split_pair(subbands.get(name)) for name in SUBBANDS}
        quads = {name: split_quad(pairs[name], verbatim_eq9=verbatim_eq9) for name in SUBBANDS}
        built.append(WaveletLevel(level=level, subbands=subbands, pairs=pairs, quads=quads))
        grid = subbands.s_ll

    logger.debug(f"Decomposed {input_shape[1]}x{input_shape[0]} grid into {levels} levels")
    return WaveletPyramid(levels=tuple(built), input_shape=input_shape, verbatim_eq9=verbatim_eq9)


def iter_grids(pyramid):
    """Yield (name, grid) for every array held by the pyramid."""
    for lvl in pyramid.levels:
        prefix = f"L{lvl.level}"
        for name in SUBBANDS:
            yield f"{prefix}_{name}_s", lvl.subbands.get(name)
            yield f"{prefix}_{name}_c_a", lvl.pairs[name].c_a
            yield f"{prefix}_{name}_c_d", lvl.pairs[name].c_d
            for component in QUAD_COMPONENTS:
                yield f"{prefix}_{name}_{component}", getattr(lvl.quads[name], component)


def dump_pyramid(pyramid, directory):
    """Write every grid as a WLFS file (count = rows, dim = columns) plus index.json."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    index = {}
    for name, grid in iter_grids(pyramid):
        write_tensor(grid, directory / f"{name}.wlfs")
        index[name] = list(grid.shape)
    (directory / 'index.json').write_text(json.dumps(index, indent=2), encoding='utf-8')
    logger.info(f"Dumped {len(index)} grids to {directory}")
    return directory
