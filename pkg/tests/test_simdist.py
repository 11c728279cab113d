import numpy as np
import pytest
from scipy.spatial.distance import cdist

from waveliq.errors import CouplingUnavailable, DimMismatch, EmptySet, InvalidDistance
from waveliq.metric.refine import FeatureSet
from waveliq.metric.simdist import (
    GroundMetric,
    coupled_distance,
    coupling_bound_study,
    directed_hausdorff,
    hausdorff,
    hausdorff_detail,
    map_similarity,
    violating_instance,
)


def naive_hausdorff(a, b, metric='euclidean'):
    """Full double loop over every pair."""
    def directed(p, q):
        worst = 0.0
        for i in range(len(p)):
            nearest = min(float(cdist(p[i:i + 1], q[j:j + 1], metric)[0, 0]) for j in range(len(q)))
            worst = max(worst, nearest)
        return worst
    return max(directed(a, b), directed(b, a))


def random_set(rng, dim=None, max_points=32):
    dim = dim or int(rng.integers(1, 9))
    return rng.normal(size=(int(rng.integers(1, max_points + 1)), dim))


@pytest.mark.unit
class TestHausdorff:
    def test_identity(self, rng):
        a = rng.normal(size=(20, 5))
        assert hausdorff(a, a) == 0.0

    def test_singletons(self):
        assert hausdorff([[0.0, 0.0]], [[3.0, 4.0]]) == 5.0

    def test_one_dimensional_example(self):
        assert hausdorff(FeatureSet([0.0, 1.0, 2.0]), FeatureSet([0.0, 4.0])) == 2.0

    def test_l1_metric(self):
        assert hausdorff([[0.0, 0.0]], [[3.0, 4.0]], GroundMetric.L1) == 7.0
        assert hausdorff([[0.0, 0.0]], [[3.0, 4.0]], 'l1') == 7.0

    def test_directed_components(self):
        detail = hausdorff_detail([[0.0], [10.0]], [[0.0]])
        assert detail.forward == 10.0
        assert detail.backward == 0.0
        assert detail.distance == 10.0

    def test_dimension_mismatch(self):
        with pytest.raises(DimMismatch):
            hausdorff(np.zeros((3, 2)), np.zeros((3, 3)))

    def test_empty_set(self):
        with pytest.raises(EmptySet):
            hausdorff(np.zeros((0, 2)), np.zeros((3, 2)))

    def test_symmetry_and_identity_on_random_sets(self, rng):
        for _ in range(200):
            dim = int(rng.integers(1, 9))
            a, b = random_set(rng, dim), random_set(rng, dim)
            assert hausdorff(a, b) == hausdorff(b, a)
            assert hausdorff(a, a) == 0.0

    def test_triangle_inequality(self, rng):
        for _ in range(200):
            dim = int(rng.integers(1, 9))
            a, b, c = random_set(rng, dim), random_set(rng, dim), random_set(rng, dim)
            assert hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c) + 1e-9

    @pytest.mark.parametrize('metric', [GroundMetric.L2, GroundMetric.L1])
    def test_matches_double_loop_bit_exact(self, rng, metric):
        for _ in range(200):
            dim = int(rng.integers(1, 9))
            a, b = random_set(rng, dim), random_set(rng, dim)
            assert hausdorff(a, b, metric) == naive_hausdorff(a, b, metric.scipy_name)

    def test_pruning_across_blocks_is_exact(self, rng):
        # more points than one query block and one target block
        a = rng.normal(size=(700, 3))
        b = rng.normal(size=(2500, 3)) * 1.1
        expected = max(cdist(a, b).min(axis=1).max(), cdist(b, a).min(axis=1).max())
        assert hausdorff(a, b) == expected

    def test_translation_invariance(self, rng):
        for _ in range(20):
            dim = int(rng.integers(1, 9))
            a, b = random_set(rng, dim), random_set(rng, dim)
            shift = rng.normal(size=dim) * 5
            assert hausdorff(a + shift, b + shift) == pytest.approx(hausdorff(a, b), abs=1e-9)

    def test_directed_is_not_symmetric(self):
        assert directed_hausdorff([[0.0], [5.0]], [[0.0]]) == 5.0
        assert directed_hausdorff([[0.0]], [[0.0], [5.0]]) == 0.0


@pytest.mark.unit
class TestCoupledDistance:
    def test_identical_sets(self, rng):
        a = rng.normal(size=(10, 4))
        assert coupled_distance(a, a) == 0.0

    def test_swapped_points(self):
        assert coupled_distance([[0.0], [1.0]], [[1.0], [0.0]]) == 1.0

    def test_cardinality_mismatch(self):
        with pytest.raises(CouplingUnavailable):
            coupled_distance(np.zeros((3, 2)), np.zeros((4, 2)))

    def test_translation_invariance(self, rng):
        a, b = rng.normal(size=(12, 3)), rng.normal(size=(12, 3))
        shift = np.array([3.0, -2.0, 7.5])
        assert coupled_distance(a + shift, b + shift) == pytest.approx(coupled_distance(a, b), abs=1e-9)


@pytest.mark.unit
class TestMapSimilarity:
    @pytest.mark.parametrize('distance,expected', [(0.0, 1.0), (1.0, 0.5), (3.0, 0.25)])
    def test_closed_form(self, distance, expected):
        assert map_similarity(distance) == expected

    def test_strictly_decreasing(self):
        values = [map_similarity(d) for d in np.linspace(0.0, 100.0, 50)]
        assert all(x > y for x, y in zip(values, values[1:]))
        assert all(0.0 < v <= 1.0 for v in values)

    @pytest.mark.parametrize('distance', [-0.1, float('inf'), float('nan'), None])
    def test_invalid(self, distance):
        with pytest.raises(InvalidDistance):
            map_similarity(distance)


@pytest.mark.unit
class TestBoundStudy:
    def test_violating_instance(self):
        a, b = violating_instance()
        assert hausdorff(a, b) == 10.0
        assert coupled_distance(a, b) == 1.0

    def test_study_reports_violation(self):
        study = coupling_bound_study(trials=1000, seed=0)
        assert study.trials == 1000
        assert 0 <= study.holds <= 1000
        assert study.violations == 1000 - study.holds
        assert study.example['hausdorff'] > study.example['coupled_distance']
        data = study.to_dict()
        assert data['violating_example']['hausdorff'] == 10.0
        assert data['fraction_holds'] == pytest.approx(study.holds / 1000)

    def test_study_is_deterministic(self):
        assert coupling_bound_study(trials=50, seed=3).holds == coupling_bound_study(trials=50, seed=3).holds
