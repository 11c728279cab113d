"""
Dataset manifests.

A manifest is a UTF-8 CSV with the exact header
``record_id,ref_path,dist_path,mos,distortion_tag``. Relative paths are
resolved against the manifest's directory. Converters from the native
LIVE/CSIQ/TID/KADID layouts are documented in docs/DATASETS.md.
"""

import csv
import io
import logging
import math
import os
from dataclasses import dataclass
from pathlib import Path

import pandas as pd

from waveliq.errors import DuplicateId, ParseError

logger = logging.getLogger(__name__)

MANIFEST_COLUMNS = ('record_id', 'ref_path', 'dist_path', 'mos', 'distortion_tag')


@dataclass(frozen=True)
class ManifestRecord:
    record_id: str
    ref_path: Path
    dist_path: Path
    mos: float
    distortion_tag: str | None = None


@dataclass(frozen=True)
class DatasetManifest:
    """Parsed manifest; ``name`` is the manifest file stem."""

    records: tuple
    name: str = 'manifest'
    base_dir: Path | None = None

    def __post_init__(self):
        seen = set()
        for record in self.records:
            if record.record_id in seen:
                raise DuplicateId(record.record_id)
            if not math.isfinite(record.mos):
                raise ParseError(f"mos for {record.record_id!r} is not finite")
            seen.add(record.record_id)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def record_ids(self):
        return [record.record_id for record in self.records]


def _bad_line(fields, line):
    raise ParseError(f"expected {len(MANIFEST_COLUMNS)} fields, got {len(fields)}", line=line)


def _resolve(base_dir, value):
    path = Path(value)
    if not path.is_absolute():
        path = Path(os.path.normpath(base_dir / path))
    return path


def _read_rows(path):
    """Header-checked body rows as (line, fields); every row has exactly five fields."""
    try:
        text = path.read_text(encoding='utf-8')
    except UnicodeDecodeError as e:
        raise ParseError(f"manifest is not valid UTF-8 (byte {e.start}: {e.reason})") from e

    reader = csv.reader(io.StringIO(text.lstrip('\ufeff'), newline=''))
    header = next(reader, None)
    if header is None or tuple(header) != MANIFEST_COLUMNS:
        raise ParseError(f"unexpected header {header!r}", line=1)

    rows = []
    start = reader.line_num + 1
    try:
        for fields in reader:
            if len(fields) != len(MANIFEST_COLUMNS):
                _bad_line(fields, start)
            rows.append((start, fields))
            start = reader.line_num + 1
    except csv.Error as e:
        raise ParseError(str(e), line=start) from e
    return rows


def load_manifest(path):
    """
    Parse a manifest CSV.

    Args:
        path: Manifest file path

    Returns:
        DatasetManifest with resolved paths

    Raises:
        ParseError: Bad header, wrong field count, non-numeric mos or bad encoding (names the line)
        DuplicateId: record_id reused
    """
    path = Path(path)
    base_dir = path.parent.resolve()

    rows = _read_rows(path)
    frame = pd.DataFrame(
        [fields for _, fields in rows],
        columns=list(MANIFEST_COLUMNS),
        dtype=str,
    )
    frame.insert(0, 'line', [line for line, _ in rows])

    records = []
    seen = {}
    for row in frame.itertuples(index=False):
        line = row.line
        record_id = row.record_id
        if not record_id:
            raise ParseError("empty record_id", line=line)
        if record_id in seen:
            raise DuplicateId(record_id, line=line)
        seen[record_id] = line

        try:
            mos = float(row.mos)
        except ValueError:
            raise ParseError(f"mos {row.mos!r} is not a number", line=line) from None
        if not math.isfinite(mos):
            raise ParseError(f"mos {row.mos!r} is not finite", line=line)

        if not row.ref_path or not row.dist_path:
            raise ParseError("empty image path", line=line)

        records.append(ManifestRecord(
            record_id=record_id,
            ref_path=_resolve(base_dir, row.ref_path),
            dist_path=_resolve(base_dir, row.dist_path),
            mos=mos,
            distortion_tag=row.distortion_tag or None,
        ))

    logger.info(f"Loaded manifest {path.name} with {len(records)} records")
    return DatasetManifest(records=tuple(records), name=path.stem, base_dir=base_dir)


def _relative(path, base_dir):
    try:
        return os.path.relpath(path, base_dir)
    except ValueError:
        # different drive on Windows
        return str(path)


def write_manifest(manifest, path):
    """Write a manifest so that load_manifest(path) reproduces it."""
    path = Path(path)
    base_dir = path.parent.resolve()
    frame = pd.DataFrame(
        [
            {
                'record_id': record.record_id,
                'ref_path': _relative(record.ref_path, base_dir),
                'dist_path': _relative(record.dist_path, base_dir),
                'mos': repr(float(record.mos)),
                'distortion_tag': record.distortion_tag or '',
            }
            for record in manifest.records
        ],
        columns=list(MANIFEST_COLUMNS),
    )
    frame.to_csv(path, index=False, lineterminator='\n', quoting=csv.QUOTE_MINIMAL)
    return path
