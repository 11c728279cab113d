"""
The quality metric: wavelet decomposition, feature refinement, set
distances, colour weighting and the fused pair score.
"""

from waveliq.metric.chroma import ColorHistogram, hellinger_weight, histogram
from waveliq.metric.refine import FeatureSet, RefineConfig, feature_count, refine
from waveliq.metric.score import (
    BatchResult,
    ImagePair,
    QualityReport,
    ScoreConfig,
    ScoreMode,
    evaluate_pair,
    score_batch,
)
from waveliq.metric.simdist import (
    Coupling,
    GroundMetric,
    coupled_distance,
    coupling_bound_study,
    hausdorff,
    load_feature_file,
    map_similarity,
    save_feature_file,
)
from waveliq.metric.wavelet import (
    FilterBank,
    WaveletPyramid,
    decompose,
    default_filters,
    dump_pyramid,
    split_pair,
    split_quad,
)

__all__ = [
    'ColorHistogram',
    'hellinger_weight',
    'histogram',
    'FeatureSet',
    'RefineConfig',
    'feature_count',
    'refine',
    'BatchResult',
    'ImagePair',
    'QualityReport',
    'ScoreConfig',
    'ScoreMode',
    'evaluate_pair',
    'score_batch',
    'Coupling',
    'GroundMetric',
    'coupled_distance',
    'coupling_bound_study',
    'hausdorff',
    'load_feature_file',
    'map_similarity',
    'save_feature_file',
    'FilterBank',
    'WaveletPyramid',
    'decompose',
    'default_filters',
    'dump_pyramid',
    'split_pair',
    'split_quad',
]
