import numpy as np
import pytest

from waveliq.bench.stats import correlate, krcc, plcc, rmse, srcc
from waveliq.errors import DegenerateInput


def pearson_oracle(x, y):
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    dx, dy = x - x.mean(), y - y.mean()
    return float(np.sum(dx * dy) / np.sqrt(np.sum(dx * dx) * np.sum(dy * dy)))


def ranks_without_ties(values):
    ranks = np.empty(len(values))
    ranks[np.argsort(values)] = np.arange(1, len(values) + 1)
    return ranks


@pytest.mark.unit
class TestPlcc:
    def test_worked_example(self):
        assert plcc([1, 2, 3, 4], [1, 3, 2, 4]) == pytest.approx(0.8, abs=1e-12)

    def test_perfect_linear(self):
        assert plcc([1, 2, 3], [2, 4, 6]) == pytest.approx(1.0)
        assert plcc([1, 2, 3], [3, 2, 1]) == pytest.approx(-1.0)

    def test_affine_invariance(self, rng):
        for _ in range(20):
            x, y = rng.normal(size=30), rng.normal(size=30)
            a, b = rng.normal() * 10, rng.normal() * 10
            assert plcc(a * x + b, y) == pytest.approx(np.sign(a) * plcc(x, y), abs=1e-12)

    def test_matches_oracle(self, rng):
        for _ in range(100):
            n = int(rng.integers(3, 200))
            x, y = rng.normal(size=n), rng.normal(size=n)
            assert plcc(x, y) == pytest.approx(pearson_oracle(x, y), abs=1e-9)


@pytest.mark.unit
class TestRankCorrelations:
    def test_tie_uses_average_ranks(self):
        assert srcc([1, 2, 3], [1, 1, 2]) == pytest.approx(0.866, abs=1e-3)
        assert srcc([1, 2, 3], [1, 1, 2]) == pytest.approx(pearson_oracle([1, 2, 3], [1.5, 1.5, 3]))

    def test_matches_oracle(self, rng):
        for _ in range(100):
            n = int(rng.integers(3, 200))
            x, y = rng.normal(size=n), rng.normal(size=n)
            expected = pearson_oracle(ranks_without_ties(x), ranks_without_ties(y))
            assert srcc(x, y) == pytest.approx(expected, abs=1e-9)

    def test_invariant_under_monotone_transform(self, rng):
        for _ in range(50):
            x, y = rng.normal(size=40), rng.normal(size=40)
            assert srcc(x, np.exp(y)) == srcc(x, y)
            assert srcc(x ** 3, y) == srcc(x, y)

    def test_reversal_flips_sign(self, rng):
        x, y = rng.normal(size=25), rng.normal(size=25)
        assert srcc(x, -y) == pytest.approx(-srcc(x, y), abs=1e-12)

    def test_kendall_perfect_order(self):
        assert krcc([1, 2, 3, 4], [10, 20, 30, 40]) == pytest.approx(1.0)
        assert krcc([1, 2, 3, 4], [4, 3, 2, 1]) == pytest.approx(-1.0)


@pytest.mark.unit
class TestDegenerateInput:
    @pytest.mark.parametrize('func', [plcc, srcc, krcc])
    def test_too_few_samples(self, func):
        with pytest.raises(DegenerateInput):
            func([1.0, 2.0], [2.0, 1.0])

    @pytest.mark.parametrize('func', [plcc, srcc, krcc])
    def test_constant_sequence(self, func):
        with pytest.raises(DegenerateInput):
            func([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])

    def test_length_mismatch(self):
        with pytest.raises(DegenerateInput):
            plcc([1.0, 2.0, 3.0], [1.0, 2.0, 3.0, 4.0])

    def test_non_finite(self):
        with pytest.raises(DegenerateInput):
            srcc([1.0, np.nan, 3.0], [1.0, 2.0, 3.0])

    def test_rmse(self):
        assert rmse([1.0, 2.0], [1.0, 4.0]) == pytest.approx(np.sqrt(2.0))
        with pytest.raises(DegenerateInput):
            rmse([], [])


@pytest.mark.unit
class TestCorrelate:
    def test_raw_mapping(self, rng):
        pred, mos = rng.uniform(size=20), rng.uniform(size=20)
        result = correlate(pred, mos, use_logistic=False)
        assert result.plcc_mapping == 'raw'
        assert result.plcc == pytest.approx(plcc(pred, mos))
        assert result.srcc == srcc(pred, mos)
        assert result.krcc == krcc(pred, mos)
        assert result.n == 20
        assert result.logistic_params is None

    def test_logistic_mapping(self, rng):
        pred = np.sort(rng.uniform(size=30))
        mos = 5.0 / (1.0 + np.exp(-10.0 * (pred - 0.5))) + 0.05 * rng.normal(size=30)
        result = correlate(pred, mos)
        assert result.plcc_mapping == 'logistic'
        assert len(result.logistic_params) == 4
        assert result.logistic_converged is True
        # SRCC never sees the mapping
        assert result.srcc == srcc(pred, mos)
        assert result.plcc >= plcc(pred, mos) - 1e-9

    def test_small_sample_falls_back_to_raw(self):
        result = correlate([0.1, 0.4, 0.2, 0.9], [1.0, 3.0, 2.0, 4.0])
        assert result.plcc_mapping == 'raw'
        assert result.srcc == pytest.approx(1.0)

    def test_degenerate_raises(self):
        with pytest.raises(DegenerateInput):
            correlate([0.5, 0.5, 0.5], [1.0, 2.0, 3.0])

    def test_to_dict(self, rng):
        data = correlate(rng.uniform(size=10), rng.uniform(size=10)).to_dict()
        assert set(data) == {'plcc', 'srcc', 'krcc', 'rmse', 'n', 'plcc_mapping',
                             'logistic_params', 'logistic_converged'}
