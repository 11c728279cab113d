"""
Image decoding, encoding and colour conversion.

Decoding relies on Pillow. Samples are held as float64 arrays scaled to
[0, 1]: 8-bit data maps v -> v/255, 16-bit data maps v -> v/65535.
"""

import io
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from waveliq.errors import DecodeError, GeometryMismatch, UnsupportedChannels

logger = logging.getLogger(__name__)

ALLOWED_FORMATS = {'PNG', 'BMP', 'JPEG'}

# BT.601 luma weights
LUMA_WEIGHTS = (0.299, 0.587, 0.114)

_SIXTEEN_BIT_MODES = {'I;16', 'I;16B', 'I;16L', 'I;16N', 'I'}
_REJECTED_MODES = {'CMYK', 'LAB', 'HSV'}


def _freeze(array):
    array = np.ascontiguousarray(array, dtype=np.float64)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class RasterImage:
    """Decoded pixel grid, shape (height, width, channels), channels 1 or 3."""

    pixels: np.ndarray = field(repr=False)

    def __post_init__(self):
        pixels = np.asarray(self.pixels, dtype=np.float64)
        if pixels.ndim == 2:
            pixels = pixels[:, :, np.newaxis]
        if pixels.ndim != 3 or pixels.shape[2] not in (1, 3):
            raise UnsupportedChannels(f"expected 1 or 3 channels, got shape {pixels.shape}")
        if pixels.shape[0] == 0 or pixels.shape[1] == 0:
            raise DecodeError("image has no pixels")
        if not np.all(np.isfinite(pixels)) or pixels.min() < 0.0 or pixels.max() > 1.0:
            raise DecodeError("samples must be finite and within [0, 1]")
        object.__setattr__(self, 'pixels', _freeze(pixels))

    @property
    def height(self):
        return self.pixels.shape[0]

    @property
    def width(self):
        return self.pixels.shape[1]

    @property
    def channels(self):
        return self.pixels.shape[2]

    @property
    def shape(self):
        return self.pixels.shape

    @property
    def samples(self):
        """Row-major, channel-interleaved flat view of the samples."""
        return self.pixels.reshape(-1)

    def __repr__(self):
        return f"RasterImage({self.width}x{self.height}x{self.channels})"


@dataclass(frozen=True, eq=False)
class LumaImage:
    """Single-channel grid, shape (height, width), values in [0, 1]."""

    pixels: np.ndarray = field(repr=False)

    def __post_init__(self):
        pixels = np.asarray(self.pixels, dtype=np.float64)
        if pixels.ndim != 2:
            raise UnsupportedChannels(f"luma grid must be 2-D, got shape {pixels.shape}")
        object.__setattr__(self, 'pixels', _freeze(pixels))

    @property
    def height(self):
        return self.pixels.shape[0]

    @property
    def width(self):
        return self.pixels.shape[1]

    @property
    def samples(self):
        return self.pixels.reshape(-1)

    def __repr__(self):
        return f"LumaImage({self.width}x{self.height})"


def _pixels_from_pil(im):
    mode = im.mode

    if mode in _REJECTED_MODES:
        raise UnsupportedChannels(f"{mode} images are not supported")

    if mode in _SIXTEEN_BIT_MODES:
        values = np.asarray(im, dtype=np.float64)
        if values.min() < 0 or values.max() > 65535:
            raise DecodeError(f"{mode} samples outside the 16-bit range")
        return values / 65535.0

    if mode == 'P':
        mode = 'RGBA' if 'transparency' in im.info else 'RGB'
        im = im.convert(mode)
    elif mode == 'PA':
        mode = 'RGBA'
        im = im.convert(mode)
    elif mode == '1':
        mode = 'L'
        im = im.convert(mode)
    elif mode == 'YCbCr':
        mode = 'RGB'
        im = im.convert(mode)

    if mode in ('LA', 'La'):
        logger.warning("Dropping alpha channel from grayscale image")
        im = im.getchannel('L')
        mode = 'L'
    elif mode in ('RGBA', 'RGBa', 'RGBX'):
        if mode != 'RGBX':
            logger.warning("Dropping alpha channel from RGBA image")
        im = im.convert('RGB')
        mode = 'RGB'

    if mode not in ('L', 'RGB'):
        raise DecodeError(f"unsupported pixel mode {im.mode}")

    return np.asarray(im, dtype=np.float64) / 255.0


def decode_image(data):
    """
    Decode a PNG, BMP or baseline JPEG payload.

    Args:
        data: Encoded image bytes

    Returns:
        RasterImage with samples in [0, 1]
    """
    try:
        with Image.open(io.BytesIO(data)) as im:
            image_format = im.format
            if image_format not in ALLOWED_FORMATS:
                raise DecodeError(f"unsupported image format {image_format}")
            im.load()
            pixels = _pixels_from_pil(im)
    except (UnidentifiedImageError, Image.DecompressionBombError, SyntaxError, ValueError, EOFError,
            OSError) as e:
        raise DecodeError(f"cannot decode image: {e}") from e

    return RasterImage(pixels)


def load_image(path):
    """Read and decode an image file. I/O failures propagate as OSError."""
    data = Path(path).read_bytes()
    try:
        return decode_image(data)
    except DecodeError as e:
        raise DecodeError(f"{path}: {e}") from e


def encode_png(img):
    """Encode a RasterImage as an 8-bit PNG."""
    quantized = np.round(img.pixels * 255.0).astype(np.uint8)
    if img.channels == 1:
        pil_image = Image.fromarray(quantized[:, :, 0])
    else:
        pil_image = Image.fromarray(quantized)
    buffer = io.BytesIO()
    pil_image.save(buffer, format='PNG')
    return buffer.getvalue()


def save_image(img, path):
    """Write a RasterImage as an 8-bit PNG file."""
    Path(path).write_bytes(encode_png(img))


def to_luma(img):
    """BT.601 luma for RGB input; single-channel input passes through."""
    if img.channels == 1:
        return LumaImage(img.pixels[:, :, 0])

    red, green, blue = (img.pixels[:, :, k] for k in range(3))
    luma = LUMA_WEIGHTS[0] * red + LUMA_WEIGHTS[1] * green + LUMA_WEIGHTS[2] * blue
    return LumaImage(np.clip(luma, 0.0, 1.0))


def check_pair(ref, dist):
    """
    Ensure both images share width, height and channel count.

    No resizing is attempted; standardising resolutions is the caller's job.

    Returns:
        The (ref, dist) tuple unchanged
    """
    if ref.shape != dist.shape:
        raise GeometryMismatch(ref.shape, dist.shape)
    return ref, dist
