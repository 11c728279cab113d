"""
Distances between feature sets.

``hausdorff`` is exact. It walks the query set block by block and drops a
query point as soon as its running nearest-neighbour distance falls to the
current directed maximum, since such a point can no longer raise it. The
surviving points are compared against the whole target set, so the result
equals the full O(n*m) evaluation.
"""

import enum
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import cdist

from waveliq.errors import CouplingUnavailable, DimMismatch, EmptySet, InvalidDistance
from waveliq.io.tensors import read_tensor, write_tensor
from waveliq.metric.refine import FeatureSet

logger = logging.getLogger(__name__)

QUERY_BLOCK = 256
TARGET_BLOCK = 2048
_SHUFFLE_SEED = 0


class GroundMetric(enum.Enum):
    L1 = 'l1'
    L2 = 'l2'

    @property
    def scipy_name(self):
        return 'cityblock' if self is GroundMetric.L1 else 'euclidean'

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


class Coupling(enum.Enum):
    ALIGNED = 'aligned'


def _points(features):
    points = getattr(features, 'points', features)
    points = np.asarray(points, dtype=np.float64)
    if points.ndim == 1:
        points = points.reshape(-1, 1)
    return points


def _check_sets(a, b):
    if a.shape[0] == 0 or b.shape[0] == 0:
        raise EmptySet(f"feature sets must be non-empty (sizes {a.shape[0]} and {b.shape[0]})")
    if a.shape[1] != b.shape[1]:
        raise DimMismatch(f"feature dimensions differ: {a.shape[1]} vs {b.shape[1]}")


def directed_hausdorff(query, target, metric=GroundMetric.L2):
    """sup over query of inf over target of the ground distance."""
    metric = GroundMetric.parse(metric)
    query, target = _points(query), _points(target)
    _check_sets(query, target)

    rng = np.random.default_rng(_SHUFFLE_SEED)
    query = query[rng.permutation(query.shape[0])]
    target = target[rng.permutation(target.shape[0])]

    current_max = 0.0
    for start in range(0, query.shape[0], QUERY_BLOCK):
        block = query[start:start + QUERY_BLOCK]
        nearest = np.full(block.shape[0], np.inf)
        active = np.arange(block.shape[0])

        for target_start in range(0, target.shape[0], TARGET_BLOCK):
            distances = cdist(block[active], target[target_start:target_start + TARGET_BLOCK],
                              metric.scipy_name)
            nearest[active] = np.minimum(nearest[active], distances.min(axis=1))
            # early exit: these points cannot exceed the running maximum
            active = active[nearest[active] > current_max]
            if active.size == 0:
                break

        if active.size:
            current_max = max(current_max, float(nearest[active].max()))

    return current_max


@dataclass(frozen=True)
class HausdorffResult:
    distance: float
    forward: float
    backward: float


def hausdorff_detail(a, b, metric=GroundMetric.L2):
    """Hausdorff distance with both directed components."""
    forward = directed_hausdorff(a, b, metric)
    backward = directed_hausdorff(b, a, metric)
    return HausdorffResult(distance=max(forward, backward), forward=forward, backward=backward)


def hausdorff(a, b, metric=GroundMetric.L2):
    """
    Exact Hausdorff distance between two point sets.

    Raises:
        DimMismatch: Point dimensions differ
        EmptySet: Either set is empty
    """
    return hausdorff_detail(a, b, metric).distance


def coupled_distance(a, b, coupling=Coupling.ALIGNED, metric=GroundMetric.L2):
    """
    Mean ground distance over coupled pairs.

    The aligned coupling pairs the i-th point of ``a`` with the i-th point
    of ``b``. This is reported next to the Hausdorff distance and is not an
    upper bound for it.
    """
    metric = GroundMetric.parse(metric)
    a, b = _points(a), _points(b)
    _check_sets(a, b)
    if coupling is not Coupling.ALIGNED:
        raise CouplingUnavailable(f"unsupported coupling {coupling}")
    if a.shape[0] != b.shape[0]:
        raise CouplingUnavailable(
            f"aligned coupling needs equal cardinality, got {a.shape[0]} and {b.shape[0]}"
        )

    difference = a - b
    if metric is GroundMetric.L1:
        per_pair = np.sum(np.abs(difference), axis=1)
    else:
        per_pair = np.sqrt(np.sum(difference * difference, axis=1))
    return float(np.mean(per_pair))


def map_similarity(d):
    """Map a distance to (0, 1]: 1 / (1 + d)."""
    if d is None or not math.isfinite(d) or d < 0:
        raise InvalidDistance(f"distance must be finite and non-negative, got {d!r}")
    return 1.0 / (1.0 + d)


def load_feature_file(path):
    """Load a WLFS feature file as a FeatureSet."""
    return FeatureSet(read_tensor(path), origin=str(path))


def save_feature_file(features, path):
    """Write a FeatureSet in WLFS format."""
    return write_tensor(_points(features), path)


# --- coupling-bound study ---------------------------------------------------------

def violating_instance():
    """Nine coincident points plus one outlier against ten coincident points."""
    a = np.zeros((10, 1))
    a[9, 0] = 10.0
    b = np.zeros((10, 1))
    return a, b


@dataclass(frozen=True)
class BoundStudy:
    trials: int
    holds: int
    seed: int
    metric: str
    example: dict = field(repr=False)

    @property
    def fraction(self):
        return self.holds / self.trials if self.trials else float('nan')

    @property
    def violations(self):
        return self.trials - self.holds

    def to_dict(self):
        return {
            'trials': self.trials,
            'holds': self.holds,
            'violations': self.violations,
            'fraction_holds': self.fraction,
            'seed': self.seed,
            'metric': self.metric,
            'violating_example': self.example,
        }


def coupling_bound_study(trials=1000, seed=0, max_points=32, max_dim=8, metric=GroundMetric.L2):
    """
    Tabulate how often hausdorff(A, B) <= coupled_distance(A, B) on random
    aligned pairs. The returned study always carries a concrete violation.
    """
    metric = GroundMetric.parse(metric)
    rng = np.random.default_rng(seed)
    holds = 0
    for _ in range(trials):
        count = int(rng.integers(1, max_points + 1))
        dim = int(rng.integers(1, max_dim + 1))
        a = rng.normal(size=(count, dim))
        b = rng.normal(size=(count, dim))
        if hausdorff(a, b, metric) <= coupled_distance(a, b, metric=metric):
            holds += 1

    a, b = violating_instance()
    example = {
        'a': a.tolist(),
        'b': b.tolist(),
        'hausdorff': hausdorff(a, b, metric),
        'coupled_distance': coupled_distance(a, b, metric=metric),
    }
    logger.info(f"Coupling bound held in {holds}/{trials} random trials")
    return BoundStudy(trials=trials, holds=holds, seed=seed, metric=metric.value, example=example)
