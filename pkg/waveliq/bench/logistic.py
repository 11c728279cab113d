"""
Four-parameter logistic mapping applied to scores before PLCC.

    m(q) = b1 * (1/2 - 1 / (1 + exp(b2 * (q - b3)))) + b4
"""

import logging
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import special
from scipy.optimize import OptimizeWarning, curve_fit

from waveliq.errors import DegenerateInput, NonConvergence

logger = logging.getLogger(__name__)

MIN_SAMPLES = 8
RANDOM_STARTS = 6
MAX_EVALUATIONS = 20000
# curvature of the near-linear start; small keeps the logistic in its affine regime
_AFFINE_STEEPNESS = 1e-3


def logistic4(q, params):
    b1, b2, b3, b4 = params
    q = np.asarray(q, dtype=np.float64)
    # 1 / (1 + exp(x)) == expit(-x), which does not overflow
    return b1 * (0.5 - special.expit(-b2 * (q - b3))) + b4


def _model(q, b1, b2, b3, b4):
    return logistic4(q, (b1, b2, b3, b4))


@dataclass(frozen=True)
class LogisticFit:
    params: tuple
    sse: float
    converged: bool

    def predict(self, q):
        return logistic4(q, self.params)


def _starts(pred, mos, seed):
    spread = float(np.std(pred))
    slope, intercept = np.polyfit(pred, mos, 1)
    direction = 1.0 if slope >= 0 else -1.0
    centre = float(np.mean(pred))
    mos_range = float(np.ptp(mos))

    standard = (direction * mos_range * 2.0, 2.0 / spread, centre, float(np.mean(mos)))

    # m(q) ~ b1 * b2 * (q - b3) / 4 + b4 for small b2 * (q - b3)
    b2 = _AFFINE_STEEPNESS / spread
    affine = (4.0 * slope / b2, b2, centre, slope * centre + intercept)

    starts = [standard, affine]
    rng = np.random.default_rng(seed)
    for _ in range(RANDOM_STARTS):
        starts.append((
            standard[0] * float(np.exp(rng.normal(0.0, 0.5))),
            standard[1] * float(np.exp(rng.normal(0.0, 1.0))),
            float(rng.uniform(pred.min(), pred.max())),
            standard[3] + float(rng.normal(0.0, 0.1)) * mos_range,
        ))
    return starts


def _sse(params, pred, mos):
    residual = logistic4(pred, params) - mos
    return float(np.dot(residual, residual))


def fit_logistic4(pred, mos, seed=0, strict=False):
    """
    Least-squares logistic fit by multi-start local search.

    Every start is refined with ``curve_fit``; the parameters with the
    lowest SSE among refined results and the starts themselves win.

    Args:
        pred: Predicted scores
        mos: Subjective scores
        seed: Seed for the random starts
        strict: Raise NonConvergence instead of flagging it

    Raises:
        DegenerateInput: Fewer than 8 samples, or constant pred or mos
        NonConvergence: strict and no start converged
    """
    pred = np.asarray(pred, dtype=np.float64).ravel()
    mos = np.asarray(mos, dtype=np.float64).ravel()
    if pred.shape != mos.shape:
        raise DegenerateInput(f"pred and mos differ in length: {pred.size} vs {mos.size}")
    if pred.size < MIN_SAMPLES:
        raise DegenerateInput(f"logistic fit needs at least {MIN_SAMPLES} samples, got {pred.size}")
    if np.ptp(pred) == 0:
        raise DegenerateInput("predictions are constant")
    if np.ptp(mos) == 0:
        raise DegenerateInput("mos values are constant")

    best_params, best_sse, converged = None, np.inf, False
    for start in _starts(pred, mos, seed):
        candidates = [tuple(start)]
        try:
            with warnings.catch_warnings():
                warnings.simplefilter('ignore', OptimizeWarning)
                with np.errstate(over='ignore', invalid='ignore'):
                    fitted, _ = curve_fit(_model, pred, mos, p0=start, maxfev=MAX_EVALUATIONS)
            if np.all(np.isfinite(fitted)):
                candidates.append(tuple(float(p) for p in fitted))
                converged = True
        except (RuntimeError, ValueError, FloatingPointError) as e:
            logger.debug(f"Logistic start {start} failed: {e}")

        for params in candidates:
            sse = _sse(params, pred, mos)
            if np.isfinite(sse) and sse < best_sse:
                best_params, best_sse = params, sse

    fit = LogisticFit(params=best_params, sse=best_sse, converged=converged)
    if not converged:
        if strict:
            raise NonConvergence("no logistic start converged", fit=fit)
        logger.warning(f"Logistic fit did not converge; using best start (sse={best_sse:.6g})")
    else:
        logger.debug(f"Logistic fit sse={best_sse:.6g} params={best_params}")
    return fit
