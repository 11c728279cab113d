"""
WLFS feature tensor files.

Little-endian layout:

    magic  b"WLFS"         4 bytes
    version u32 = 1
    dim     u32
    count   u64
    payload count*dim float64, row-major
    crc32   u32 of the payload bytes
"""

import struct
import zlib
from pathlib import Path

import numpy as np

from waveliq.errors import FormatError

MAGIC = b'WLFS'
VERSION = 1

_HEADER = struct.Struct('<4sIIQ')
_TRAILER = struct.Struct('<I')


def encode_tensor(rows):
    """Serialize a 2-D float array to WLFS bytes."""
    rows = np.asarray(rows, dtype='<f8')
    if rows.ndim != 2:
        raise FormatError(f"tensor must be 2-D, got shape {rows.shape}")
    if not np.all(np.isfinite(rows)):
        raise FormatError("tensor contains non-finite values")
    count, dim = rows.shape
    payload = np.ascontiguousarray(rows).tobytes()
    header = _HEADER.pack(MAGIC, VERSION, dim, count)
    return header + payload + _TRAILER.pack(zlib.crc32(payload) & 0xFFFFFFFF)


def decode_tensor(data):
    """Parse WLFS bytes into a (count, dim) float64 array."""
    if len(data) < _HEADER.size:
        raise FormatError("truncated header")
    magic, version, dim, count = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}")
    if version != VERSION:
        raise FormatError(f"unsupported version {version}")

    payload_size = count * dim * 8
    expected = _HEADER.size + payload_size + _TRAILER.size
    if len(data) < expected:
        raise FormatError(f"truncated payload: {len(data)} of {expected} bytes")
    if len(data) > expected:
        raise FormatError(f"{len(data) - expected} trailing bytes after checksum")

    payload = data[_HEADER.size:_HEADER.size + payload_size]
    (stored_crc,) = _TRAILER.unpack_from(data, _HEADER.size + payload_size)
    if zlib.crc32(payload) & 0xFFFFFFFF != stored_crc:
        raise FormatError("payload checksum mismatch")

    rows = np.frombuffer(payload, dtype='<f8').astype(np.float64).reshape(count, dim)
    if not np.all(np.isfinite(rows)):
        raise FormatError("payload contains non-finite values")
    return rows


def write_tensor(rows, path):
    Path(path).write_bytes(encode_tensor(rows))
    return Path(path)


def read_tensor(path):
    return decode_tensor(Path(path).read_bytes())
