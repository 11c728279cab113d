"""
Dataset benchmarks.

``run_benchmark`` scores every manifest record, correlates the valid scores
with MOS and keeps failed records in the report with their error.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import pandas as pd

from waveliq.bench.distortions import ladder
from waveliq.bench.stats import CorrelationResult, correlate, plcc, srcc
from waveliq.errors import DegenerateInput, FormatError, describe
from waveliq.io.images import load_image, save_image
from waveliq.io.manifest import DatasetManifest, ManifestRecord, write_manifest
from waveliq.metric.score import ImagePair, ScoreConfig, ScoreMode, score_batch

logger = logging.getLogger(__name__)

MIN_GROUP_SIZE = 3
CSV_COLUMNS = ['record_id', 'q_p', 'mos']


@dataclass(frozen=True)
class RecordScore:
    record_id: str
    mos: float
    q_p: float | None = None
    error: str | None = None
    distortion_tag: str | None = None

    def to_dict(self):
        entry = {'record_id': self.record_id, 'q_p': self.q_p, 'mos': self.mos}
        if self.distortion_tag is not None:
            entry['distortion_tag'] = self.distortion_tag
        if self.error is not None:
            entry['error'] = self.error
        return entry


@dataclass(frozen=True)
class BenchmarkReport:
    dataset_name: str
    config_fingerprint: str
    mode: str
    records: tuple
    correlations: CorrelationResult | None = None
    correlation_error: str | None = None
    by_distortion: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)

    @property
    def valid_records(self):
        return [record for record in self.records if record.q_p is not None]

    @property
    def failed_records(self):
        return [record for record in self.records if record.q_p is None]

    @property
    def n(self):
        return len(self.valid_records)

    def summary_line(self):
        if self.correlations is None:
            return f"{self.dataset_name} mode={self.mode} n={self.n} plcc=nan srcc=nan"
        return (
            f"{self.dataset_name} mode={self.mode} n={self.n} "
            f"plcc={self.correlations.plcc:.4f} srcc={self.correlations.srcc:.4f}"
        )


def _breakdown(records):
    frame = pd.DataFrame(
        [
            {'tag': record.distortion_tag, 'q_p': record.q_p, 'mos': record.mos}
            for record in records
            if record.q_p is not None and record.distortion_tag
        ],
        columns=['tag', 'q_p', 'mos'],
    )
    breakdown = {}
    for tag, group in frame.groupby('tag', sort=True):
        if len(group) < MIN_GROUP_SIZE:
            continue
        try:
            breakdown[tag] = {
                'n': int(len(group)),
                'plcc': plcc(group['q_p'], group['mos']),
                'srcc': srcc(group['q_p'], group['mos']),
            }
        except DegenerateInput as e:
            logger.debug(f"No correlation for distortion {tag}: {e}")
    return breakdown


def run_benchmark(manifest, cfg=None, use_logistic=True, jobs=1, cache_entries=None, seed=0):
    """
    Score a manifest and correlate the scores with its MOS column.

    SRCC uses raw scores; PLCC uses logistic-mapped scores when
    ``use_logistic`` and raw scores otherwise. With fewer than three valid
    records the report carries ``correlation_error`` instead of statistics.

    Args:
        manifest: DatasetManifest
        cfg: ScoreConfig
        use_logistic: Fit the 4-parameter logistic before PLCC
        jobs: Worker processes for scoring
        cache_entries: Reference cache capacity per worker
        seed: Seed for the logistic random starts

    Returns:
        BenchmarkReport
    """
    cfg = cfg or ScoreConfig()
    pairs = [ImagePair(record.record_id, record.ref_path, record.dist_path) for record in manifest]
    results = score_batch(pairs, cfg, jobs=jobs, cache_entries=cache_entries)

    records = tuple(
        RecordScore(
            record_id=record.record_id,
            mos=record.mos,
            q_p=result.report.q_p if result.ok else None,
            error=result.error,
            distortion_tag=record.distortion_tag,
        )
        for record, result in zip(manifest.records, results)
    )

    valid = [record for record in records if record.q_p is not None]
    correlations, correlation_error = None, None
    try:
        correlations = correlate(
            [record.q_p for record in valid],
            [record.mos for record in valid],
            use_logistic=use_logistic,
            seed=seed,
        )
    except DegenerateInput as e:
        correlation_error = describe(e)
        logger.warning(f"Correlations unavailable for {manifest.name}: {e}")

    report = BenchmarkReport(
        dataset_name=manifest.name,
        config_fingerprint=cfg.fingerprint,
        mode=cfg.mode.value,
        records=records,
        correlations=correlations,
        correlation_error=correlation_error,
        by_distortion=_breakdown(records),
        config=cfg.to_dict(),
    )
    logger.info(report.summary_line())
    return report


def run_ablation(manifest, cfg=None, use_logistic=True, jobs=1, cache_entries=None, seed=0):
    """Benchmark the manifest once per scoring mode; returns {mode value: report}."""
    cfg = cfg or ScoreConfig()
    return {
        mode.value: run_benchmark(manifest, cfg.with_mode(mode), use_logistic=use_logistic,
                                  jobs=jobs, cache_entries=cache_entries, seed=seed)
        for mode in ScoreMode
    }


# --- report I/O ----------------------------------------------------------------------

def report_to_dict(report):
    correlations = report.correlations.to_dict() if report.correlations else {}
    data = {
        'dataset_name': report.dataset_name,
        'config_fingerprint': report.config_fingerprint,
        'mode': report.mode,
        'records': [record.to_dict() for record in report.records],
        'plcc': correlations.get('plcc'),
        'srcc': correlations.get('srcc'),
        'krcc': correlations.get('krcc'),
        'rmse': correlations.get('rmse'),
        'n': report.n,
        'plcc_mapping': correlations.get('plcc_mapping'),
        'by_distortion': report.by_distortion,
        'config': report.config,
    }
    if correlations.get('logistic_params'):
        data['logistic_params'] = correlations['logistic_params']
        data['logistic_converged'] = correlations['logistic_converged']
    if report.correlation_error:
        data['correlation_error'] = report.correlation_error
    return data


def report_from_dict(data):
    try:
        records = tuple(
            RecordScore(
                record_id=entry['record_id'],
                mos=float(entry['mos']),
                q_p=entry.get('q_p'),
                error=entry.get('error'),
                distortion_tag=entry.get('distortion_tag'),
            )
            for entry in data['records']
        )
        correlations = None
        if data.get('plcc') is not None:
            params = data.get('logistic_params')
            correlations = CorrelationResult(
                plcc=data['plcc'],
                srcc=data['srcc'],
                n=data['n'],
                krcc=data.get('krcc'),
                rmse=data.get('rmse'),
                plcc_mapping=data.get('plcc_mapping') or 'raw',
                logistic_params=tuple(params) if params else None,
                logistic_converged=data.get('logistic_converged'),
            )
        return BenchmarkReport(
            dataset_name=data['dataset_name'],
            config_fingerprint=data['config_fingerprint'],
            mode=data.get('mode', ScoreMode.DWT_PLUS_CH.value),
            records=records,
            correlations=correlations,
            correlation_error=data.get('correlation_error'),
            by_distortion=data.get('by_distortion', {}),
            config=data.get('config', {}),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"malformed benchmark report: {e}") from e


def save_report(report, path):
    path = Path(path)
    path.write_text(json.dumps(report_to_dict(report), indent=2) + '\n', encoding='utf-8')
    logger.info(f"Wrote report to {path}")
    return path


def load_report(path):
    try:
        data = json.loads(Path(path).read_text(encoding='utf-8'))
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: not a JSON report ({e})") from e
    return report_from_dict(data)


def export_csv(report, path):
    """Write ``record_id,q_p,mos``; failed records leave q_p empty."""
    frame = pd.DataFrame([record.to_dict() for record in report.records], columns=CSV_COLUMNS)
    frame.to_csv(path, index=False, lineterminator='\n')
    return Path(path)


# --- ladders -------------------------------------------------------------------------

def write_ladder(ref_path, out_dir, seed=0):
    """
    Write every distortion of ``ref_path`` as PNG plus a manifest ``ladder.csv``.

    The reference is re-encoded next to the distortions so that both sides
    share the same 8-bit quantization. MOS is the negated level.

    Returns:
        (DatasetManifest, manifest path)
    """
    ref_path = Path(ref_path)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    ref = load_image(ref_path)
    stem = ref_path.stem
    reference_copy = out_dir / f"{stem}_ref.png"
    save_image(ref, reference_copy)

    records = []
    for kind, level, image in ladder(ref, seed=seed):
        dist_path = out_dir / f"{stem}_{kind.value}_{level}.png"
        save_image(image, dist_path)
        records.append(ManifestRecord(
            record_id=f"{stem}_{kind.value}_{level}",
            ref_path=reference_copy.resolve(),
            dist_path=dist_path.resolve(),
            mos=float(-level),
            distortion_tag=kind.value,
        ))

    manifest_path = out_dir / 'ladder.csv'
    manifest = DatasetManifest(records=tuple(records), name=manifest_path.stem,
                               base_dir=out_dir.resolve())
    write_manifest(manifest, manifest_path)
    logger.info(f"Wrote {len(records)} ladder images for {ref_path.name} to {out_dir}")
    return manifest, manifest_path


def mean_ladder_srcc(report):
    """Average SRCC between -level and q_p over the report's distortion groups."""
    values = [entry['srcc'] for entry in report.by_distortion.values()]
    return float(np.mean(values)) if values else float('nan')
