"""
Pair scoring.

The reference and the distorted image go through identical transforms:
luma -> wavelet pyramid -> refined feature set, and a per-channel colour
histogram. The Hausdorff distance between the feature sets is mapped to a
similarity ``s`` and the Hellinger distance between the histograms gives the
weight ``c``. Depending on the mode the quality score is ``s``, ``1 - c`` or
``s * (1 - beta * c)``.
"""

import enum
import hashlib
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import partial
from pathlib import Path

from waveliq import record_context
from waveliq.errors import BadBinCount, ConfigMismatch, GeometryMismatch, WaveliqError, describe
from waveliq.io.images import RasterImage, check_pair, load_image, to_luma
from waveliq.metric.chroma import DEFAULT_BINS, histogram, hellinger_weight
from waveliq.metric.refine import RefineConfig, refine
from waveliq.metric.simdist import GroundMetric, coupled_distance, hausdorff_detail, map_similarity
from waveliq.metric.wavelet import MAX_LEVELS, decompose
from waveliq.services.cache import cache, cached_reference, configure_cache

logger = logging.getLogger(__name__)


class ScoreMode(enum.Enum):
    DWT_ONLY = 'dwt'
    CH_ONLY = 'ch'
    DWT_PLUS_CH = 'dwt+ch'

    @property
    def uses_wavelets(self):
        return self is not ScoreMode.CH_ONLY

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ConfigMismatch(f"unknown mode {value!r}") from None


@dataclass(frozen=True)
class ScoreConfig:
    mode: ScoreMode = ScoreMode.DWT_PLUS_CH
    refine_cfg: RefineConfig = field(default_factory=RefineConfig)
    metric: GroundMetric = GroundMetric.L2
    bins: int = DEFAULT_BINS
    levels: int = 2
    beta: float = 1.0
    verbatim_eq9: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'mode', ScoreMode.parse(self.mode))
        try:
            object.__setattr__(self, 'metric', GroundMetric.parse(self.metric))
        except ValueError:
            raise ConfigMismatch(f"unknown ground metric {self.metric!r}") from None

        if not 0.0 <= self.beta <= 1.0:
            raise ConfigMismatch(f"beta must lie in [0, 1], got {self.beta}")
        if not 1 <= self.levels <= MAX_LEVELS:
            raise ConfigMismatch(f"levels must lie in 1..{MAX_LEVELS}, got {self.levels}")
        if self.bins < 2:
            raise BadBinCount(f"bins must be >= 2, got {self.bins}")
        for level in self.refine_cfg.levels_used or ():
            if not 1 <= level <= self.levels:
                raise ConfigMismatch(
                    f"refinement level {level} outside the decomposition depth {self.levels}"
                )

    @classmethod
    def from_config(cls, config_class, **overrides):
        """Build from a config class; keyword overrides that are None are ignored."""
        values = {
            'mode': config_class.MODE,
            'metric': config_class.METRIC,
            'bins': config_class.BINS,
            'levels': config_class.LEVELS,
            'beta': config_class.BETA,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)

    def with_mode(self, mode):
        return replace(self, mode=ScoreMode.parse(mode))

    def to_dict(self):
        refine_cfg = self.refine_cfg
        return {
            'mode': self.mode.value,
            'metric': self.metric.value,
            'bins': self.bins,
            'levels': self.levels,
            'beta': self.beta,
            'verbatim_eq9': self.verbatim_eq9,
            'refine': {
                'low_weight': refine_cfg.low_weight,
                'high_weight': refine_cfg.high_weight,
                'levels_used': list(refine_cfg.levels_used) if refine_cfg.levels_used else None,
                'magnitude_only': refine_cfg.magnitude_only,
            },
        }

    @property
    def fingerprint(self):
        """First 16 hex digits of the SHA-256 of the canonical JSON form."""
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(',', ':'))
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()[:16]


@dataclass(frozen=True)
class LevelDiagnostics:
    level: int
    feature_count: int
    forward: float
    backward: float

    def to_dict(self):
        return {
            'level': self.level,
            'feature_count': self.feature_count,
            'forward': self.forward,
            'backward': self.backward,
        }


@dataclass(frozen=True)
class QualityReport:
    q_p: float
    mode: ScoreMode
    ch_weight: float
    similarity: float | None = None
    hausdorff_d: float | None = None
    coupled_d: float | None = None
    per_level_diagnostics: tuple = ()
    config_fingerprint: str = ''

    def to_dict(self):
        return {
            'q_p': self.q_p,
            'mode': self.mode.value,
            'similarity': self.similarity,
            'hausdorff_d': self.hausdorff_d,
            'coupled_d': self.coupled_d,
            'ch_weight': self.ch_weight,
            'per_level_diagnostics': [diag.to_dict() for diag in self.per_level_diagnostics],
            'config_fingerprint': self.config_fingerprint,
        }


@dataclass(frozen=True)
class ImageAnalysis:
    """Everything the score needs from one side of a pair."""

    shape: tuple
    hist: object
    features: object = None


def analyze_image(img, cfg):
    """Histogram and, unless the mode skips it, the refined feature set of ``img``."""
    hist = histogram(img, cfg.bins)
    features = None
    if cfg.mode.uses_wavelets:
        pyramid = decompose(to_luma(img), levels=cfg.levels, verbatim_eq9=cfg.verbatim_eq9)
        features = refine(pyramid, cfg.refine_cfg)
    return ImageAnalysis(shape=img.shape, hist=hist, features=features)


def _combine(ref, dist, cfg):
    c = hellinger_weight(ref.hist, dist.hist)
    fingerprint = cfg.fingerprint

    if not cfg.mode.uses_wavelets:
        return QualityReport(q_p=1.0 - c, mode=cfg.mode, ch_weight=c,
                             config_fingerprint=fingerprint)

    detail = hausdorff_detail(ref.features, dist.features, cfg.metric)
    s = map_similarity(detail.distance)
    coupled = coupled_distance(ref.features, dist.features, metric=cfg.metric)

    diagnostics = []
    for level in cfg.refine_cfg.levels_used or range(1, cfg.levels + 1):
        ref_level, dist_level = ref.features.with_level(level), dist.features.with_level(level)
        level_detail = hausdorff_detail(ref_level, dist_level, cfg.metric)
        diagnostics.append(LevelDiagnostics(
            level=level,
            feature_count=len(ref_level),
            forward=level_detail.forward,
            backward=level_detail.backward,
        ))

    if cfg.mode is ScoreMode.DWT_ONLY:
        q_p = s
    else:
        q_p = s * (1.0 - cfg.beta * c)

    return QualityReport(
        q_p=q_p,
        mode=cfg.mode,
        ch_weight=c,
        similarity=s,
        hausdorff_d=detail.distance,
        coupled_d=coupled,
        per_level_diagnostics=tuple(diagnostics),
        config_fingerprint=fingerprint,
    )


def evaluate_pair(ref, dist, cfg=None):
    """
    Score ``dist`` against ``ref``.

    Args:
        ref: Reference RasterImage
        dist: Distorted RasterImage of the same shape
        cfg: ScoreConfig (defaults to DWT+CH, two levels, 64 bins, L2, beta 1)

    Returns:
        QualityReport with q_p in [0, 1]

    Raises:
        GeometryMismatch: Shapes differ
        ImageTooSmall: The images are too small for cfg.levels
    """
    cfg = cfg or ScoreConfig()
    check_pair(ref, dist)
    return _combine(analyze_image(ref, cfg), analyze_image(dist, cfg), cfg)


# --- batch scoring -------------------------------------------------------------------

@dataclass(frozen=True)
class ImagePair:
    """A pair to score; ``ref`` and ``dist`` are RasterImages or image paths."""

    pair_id: str
    ref: object
    dist: object


@dataclass(frozen=True)
class BatchResult:
    pair_id: str
    report: QualityReport | None = None
    error: str | None = None

    @property
    def ok(self):
        return self.report is not None


def _as_image(value):
    if isinstance(value, RasterImage):
        return value
    return load_image(value)


def _reference_analysis(value, cfg):
    if isinstance(value, RasterImage):
        return analyze_image(value, cfg)
    return cached_reference(Path(value), cfg.fingerprint,
                            lambda path: analyze_image(load_image(path), cfg))


def _score_one(item, cfg):
    with record_context(item.pair_id):
        try:
            ref = _reference_analysis(item.ref, cfg)
            dist_image = _as_image(item.dist)
            if ref.shape != dist_image.shape:
                raise GeometryMismatch(ref.shape, dist_image.shape)
            report = _combine(ref, analyze_image(dist_image, cfg), cfg)
            logger.debug(f"q_p={report.q_p:.6f}")
            return BatchResult(pair_id=item.pair_id, report=report)
        except (WaveliqError, OSError) as e:
            logger.warning(f"Scoring failed: {describe(e)}")
            return BatchResult(pair_id=item.pair_id, error=describe(e))


def _init_worker(cache_entries, log_level):
    configure_cache(cache_entries)
    logging.getLogger().setLevel(log_level)


def score_batch(pairs, cfg=None, jobs=1, cache_entries=None):
    """
    Score many pairs; results come back in input order.

    Failures are captured per pair as ``"ClassName: message"`` and never
    stop the batch. Worker processes each hold their own reference cache.

    Args:
        pairs: Iterable of ImagePair
        cfg: ScoreConfig shared by all pairs
        jobs: Worker process count; 1 scores in this process
        cache_entries: Reference cache capacity per worker (None keeps the current one)

    Returns:
        list of BatchResult
    """
    cfg = cfg or ScoreConfig()
    pairs = list(pairs)
    if not pairs:
        return []

    jobs = max(1, min(jobs or 1, len(pairs)))
    if cache_entries is not None and jobs == 1:
        configure_cache(cache_entries)
    logger.info(f"Scoring {len(pairs)} pairs with {jobs} worker(s), config {cfg.fingerprint}")

    worker = partial(_score_one, cfg=cfg)
    if jobs == 1:
        results = [worker(item) for item in pairs]
    else:
        entries = cache.max_entries if cache_entries is None else cache_entries
        chunksize = max(1, len(pairs) // (jobs * 4))
        with ProcessPoolExecutor(
            max_workers=jobs,
            initializer=_init_worker,
            initargs=(entries, logging.getLogger().level),
        ) as executor:
            results = list(executor.map(worker, pairs, chunksize=chunksize))

    failed = sum(1 for result in results if not result.ok)
    if failed:
        logger.warning(f"{failed} of {len(results)} pairs failed to score")
    if jobs == 1:
        logger.info(f"Reference cache: {cache.stats()}")
    return results

