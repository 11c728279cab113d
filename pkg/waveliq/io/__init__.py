"""
Image, manifest and feature-file input/output.
"""

from waveliq.io.images import (
    LumaImage,
    RasterImage,
    check_pair,
    decode_image,
    encode_png,
    load_image,
    save_image,
    to_luma,
)
from waveliq.io.manifest import (
    DatasetManifest,
    ManifestRecord,
    load_manifest,
    write_manifest,
)
from waveliq.io.tensors import decode_tensor, encode_tensor, read_tensor, write_tensor

__all__ = [
    'LumaImage',
    'RasterImage',
    'check_pair',
    'decode_image',
    'encode_png',
    'load_image',
    'save_image',
    'to_luma',
    'DatasetManifest',
    'ManifestRecord',
    'load_manifest',
    'write_manifest',
    'decode_tensor',
    'encode_tensor',
    'read_tensor',
    'write_tensor',
]
