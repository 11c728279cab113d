"""
Agreement statistics between predicted quality and subjective scores.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy import stats

from waveliq.bench.logistic import fit_logistic4, logistic4
from waveliq.errors import DegenerateInput

logger = logging.getLogger(__name__)

MIN_SAMPLES = 3


def _paired(x, y):
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.shape != y.shape:
        raise DegenerateInput(f"sequences differ in length: {x.size} vs {y.size}")
    if x.size < MIN_SAMPLES:
        raise DegenerateInput(f"need at least {MIN_SAMPLES} samples, got {x.size}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise DegenerateInput("sequences must be finite")
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        raise DegenerateInput("both sequences need non-zero variance")
    return x, y


def plcc(x, y):
    """Pearson linear correlation coefficient."""
    x, y = _paired(x, y)
    value, _ = stats.pearsonr(x, y)
    return float(value)


def srcc(x, y):
    """Spearman rank correlation; ties get average ranks."""
    x, y = _paired(x, y)
    value, _ = stats.spearmanr(x, y)
    return float(value)


def krcc(x, y):
    """Kendall tau-b."""
    x, y = _paired(x, y)
    value, _ = stats.kendalltau(x, y)
    return float(value)


def rmse(prediction, target):
    prediction = np.asarray(prediction, dtype=np.float64).ravel()
    target = np.asarray(target, dtype=np.float64).ravel()
    if prediction.shape != target.shape or prediction.size == 0:
        raise DegenerateInput("rmse needs two non-empty sequences of equal length")
    return float(np.sqrt(np.mean((prediction - target) ** 2)))


@dataclass(frozen=True)
class CorrelationResult:
    """
    Agreement between scores and MOS.

    ``plcc`` and ``rmse`` are computed on logistic-mapped scores when
    ``plcc_mapping`` is ``'logistic'`` and on raw scores when it is
    ``'raw'``. ``srcc`` and ``krcc`` always use raw scores.
    """

    plcc: float
    srcc: float
    n: int
    krcc: float | None = None
    rmse: float | None = None
    plcc_mapping: str = 'raw'
    logistic_params: tuple | None = None
    logistic_converged: bool | None = None

    def to_dict(self):
        return {
            'plcc': self.plcc,
            'srcc': self.srcc,
            'krcc': self.krcc,
            'rmse': self.rmse,
            'n': self.n,
            'plcc_mapping': self.plcc_mapping,
            'logistic_params': list(self.logistic_params) if self.logistic_params else None,
            'logistic_converged': self.logistic_converged,
        }


def correlate(pred, mos, use_logistic=True, seed=0):
    """
    Compute every agreement statistic for one set of (prediction, MOS) pairs.

    When the logistic fit is requested but impossible (too few samples or a
    degenerate mapping) PLCC falls back to raw scores and the result says so.

    Raises:
        DegenerateInput: Fewer than 3 samples or a constant sequence
    """
    pred, mos = _paired(pred, mos)
    rank = srcc(pred, mos)
    tau = krcc(pred, mos)

    if use_logistic:
        try:
            fit = fit_logistic4(pred, mos, seed=seed)
            mapped = logistic4(pred, fit.params)
            return CorrelationResult(
                plcc=plcc(mapped, mos),
                srcc=rank,
                n=int(pred.size),
                krcc=tau,
                rmse=rmse(mapped, mos),
                plcc_mapping='logistic',
                logistic_params=tuple(float(p) for p in fit.params),
                logistic_converged=fit.converged,
            )
        except DegenerateInput as e:
            logger.warning(f"Logistic mapping unavailable, using raw scores for PLCC: {e}")

    return CorrelationResult(
        plcc=plcc(pred, mos),
        srcc=rank,
        n=int(pred.size),
        krcc=tau,
        rmse=rmse(pred, mos),
        plcc_mapping='raw',
    )
