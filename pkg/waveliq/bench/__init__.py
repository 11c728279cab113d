"""
Benchmark harness: agreement statistics, the logistic mapping, synthetic
distortion ladders and dataset-level reports.
"""

from waveliq.bench.distortions import Distortion, ladder, synthesize, reference_pattern
from waveliq.bench.harness import (
    BenchmarkReport,
    RecordScore,
    export_csv,
    load_report,
    report_to_dict,
    run_ablation,
    run_benchmark,
    save_report,
    write_ladder,
)
from waveliq.bench.logistic import LogisticFit, fit_logistic4, logistic4
from waveliq.bench.stats import CorrelationResult, correlate, krcc, plcc, rmse, srcc

__all__ = [
    'Distortion',
    'ladder',
    'synthesize',
    'reference_pattern',
    'BenchmarkReport',
    'RecordScore',
    'export_csv',
    'load_report',
    'report_to_dict',
    'run_ablation',
    'run_benchmark',
    'save_report',
    'write_ladder',
    'LogisticFit',
    'fit_logistic4',
    'logistic4',
    'CorrelationResult',
    'correlate',
    'krcc',
    'plcc',
    'rmse',
    'srcc',
]
