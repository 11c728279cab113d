"""
Command-line interface.

Results go to stdout as JSON (``bench`` prints one summary line per mode);
diagnostics go to stderr. Exit codes: 0 success, 1 I/O failure, 2 invalid
input or configuration.
"""

import functools
import json
import logging
from pathlib import Path

import click

from waveliq import __version__, setup_logging
from waveliq.bench.harness import (
    export_csv,
    report_to_dict,
    run_ablation,
    run_benchmark,
    save_report,
    write_ladder,
)
from waveliq.config import get_config
from waveliq.errors import CouplingUnavailable, WaveliqError, describe
from waveliq.io.images import load_image, to_luma
from waveliq.io.manifest import load_manifest
from waveliq.metric.refine import RefineConfig, refine
from waveliq.metric.score import ScoreConfig, ScoreMode, evaluate_pair
from waveliq.metric.simdist import (
    GroundMetric,
    coupled_distance,
    coupling_bound_study,
    hausdorff_detail,
    load_feature_file,
    map_similarity,
    save_feature_file,
)
from waveliq.metric.wavelet import MAX_LEVELS, decompose, dump_pyramid

logger = logging.getLogger(__name__)

EXIT_IO = 1
EXIT_INVALID = 2

MODES = [mode.value for mode in ScoreMode]
METRICS = [metric.value for metric in GroundMetric]


def handle_errors(func):
    """Map domain errors to exit code 2 and filesystem errors to exit code 1."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return func(*args, **kwargs)
        except WaveliqError as e:
            click.echo(f"error: {describe(e)}", err=True)
            ctx.exit(EXIT_INVALID)
        except OSError as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(EXIT_IO)

    return wrapper


def scoring_options(func):
    options = [
        click.option('--mode', type=click.Choice(MODES), default=None,
                     help='Score fusion mode (default dwt+ch).'),
        click.option('--levels', type=click.IntRange(1, MAX_LEVELS), default=None,
                     help='Wavelet levels (default 2).'),
        click.option('--bins', type=click.IntRange(min=2), default=None,
                     help='Histogram bins per channel (default 64).'),
        click.option('--metric', type=click.Choice(METRICS), default=None,
                     help='Ground metric for feature distances (default l2).'),
        click.option('--beta', type=click.FloatRange(0.0, 1.0), default=None,
                     help='Histogram weight strength (default 1.0).'),
        click.option('--low-weight', type=click.FloatRange(min=0.0), default=1.0, show_default=True),
        click.option('--high-weight', type=click.FloatRange(min=0.0), default=1.0, show_default=True),
        click.option('--compat-eq9-verbatim', 'verbatim_eq9', is_flag=True,
                     help='Compatibility mode: C_DA as an identically-zero self-difference.'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def build_score_config(config_class, mode=None, levels=None, bins=None, metric=None, beta=None,
                       low_weight=1.0, high_weight=1.0, verbatim_eq9=False):
    """Flags override the environment configuration, which overrides defaults."""
    return ScoreConfig.from_config(
        config_class,
        mode=mode,
        levels=levels,
        bins=bins,
        metric=metric,
        beta=beta,
        verbatim_eq9=verbatim_eq9,
        refine_cfg=RefineConfig(low_weight=low_weight, high_weight=high_weight),
    )


def emit_json(data):
    click.echo(json.dumps(data, indent=2))


@click.group()
@click.version_option(__version__, prog_name='waveliq')
@click.pass_context
def cli(ctx):
    """Full-reference image quality scoring and benchmarking."""
    try:
        config_class = get_config()
    except ValueError as e:
        click.echo(f"error: {e}", err=True)
        ctx.exit(EXIT_INVALID)
    setup_logging(config_class)
    ctx.obj = config_class


@cli.command()
@click.argument('ref', type=click.Path(path_type=Path))
@click.argument('dist', type=click.Path(path_type=Path))
@scoring_options
@click.option('--dump-pyramid', 'dump_dir', type=click.Path(path_type=Path), default=None,
              help='Also write both wavelet pyramids as WLFS grids under this directory.')
@click.pass_obj
@handle_errors
def score(config_class, ref, dist, dump_dir, **flags):
    """Score DIST against REF and print the quality report."""
    cfg = build_score_config(config_class, **flags)
    ref_image = load_image(ref)
    dist_image = load_image(dist)
    report = evaluate_pair(ref_image, dist_image, cfg)

    if dump_dir is not None:
        for label, image in (('ref', ref_image), ('dist', dist_image)):
            pyramid = decompose(to_luma(image), levels=cfg.levels, verbatim_eq9=cfg.verbatim_eq9)
            dump_pyramid(pyramid, dump_dir / label)

    emit_json(report.to_dict())


@cli.command()
@click.argument('manifest', type=click.Path(path_type=Path))
@click.argument('out', type=click.Path(path_type=Path))
@scoring_options
@click.option('--jobs', type=click.IntRange(min=1), default=None,
              help='Worker processes (default: available cores).')
@click.option('--csv', 'write_csv', is_flag=True, help='Also write record_id,q_p,mos as CSV.')
@click.option('--logistic', type=click.Choice(['on', 'off']), default='on', show_default=True,
              help='Fit the 4-parameter logistic before PLCC.')
@click.option('--ablation', is_flag=True, help='Benchmark every scoring mode.')
@click.option('--seed', type=int, default=0, show_default=True,
              help='Seed for the logistic fit starts.')
@click.pass_obj
@handle_errors
def bench(config_class, manifest, out, jobs, write_csv, logistic, ablation, seed, **flags):
    """Benchmark the metric on MANIFEST and write the report to OUT."""
    cfg = build_score_config(config_class, **flags)
    jobs = jobs or config_class.default_jobs()
    dataset = load_manifest(manifest)
    options = dict(use_logistic=logistic == 'on', jobs=jobs,
                   cache_entries=config_class.CACHE_ENTRIES, seed=seed)

    if ablation:
        reports = run_ablation(dataset, cfg, **options)
        payload = {mode: report_to_dict(report) for mode, report in reports.items()}
        out.write_text(json.dumps({'ablation': payload}, indent=2) + '\n', encoding='utf-8')
    else:
        reports = {cfg.mode.value: run_benchmark(dataset, cfg, **options)}
        save_report(reports[cfg.mode.value], out)

    if write_csv:
        for mode, report in reports.items():
            if ablation:
                csv_path = out.with_name(f"{out.stem}_{mode.replace('+', '_')}.csv")
            else:
                csv_path = out.with_suffix('.csv')
            export_csv(report, csv_path)

    for report in reports.values():
        click.echo(report.summary_line())
        for record in report.failed_records:
            logger.warning(f"{record.record_id}: {record.error}")


@cli.command()
@click.argument('ref', type=click.Path(path_type=Path))
@click.argument('out_dir', type=click.Path(path_type=Path))
@click.option('--seed', type=int, default=0, show_default=True, help='Noise seed.')
@click.pass_obj
@handle_errors
def ladder(config_class, ref, out_dir, seed):
    """Write the noise, blur and contrast ladders of REF into OUT_DIR."""
    manifest, manifest_path = write_ladder(ref, out_dir, seed=seed)
    emit_json({'manifest': str(manifest_path), 'records': len(manifest), 'seed': seed})


@cli.group()
def features():
    """Feature-file tooling."""


@features.command('export')
@click.argument('image', type=click.Path(path_type=Path))
@click.argument('out', type=click.Path(path_type=Path))
@click.option('--levels', type=click.IntRange(1, MAX_LEVELS), default=None)
@click.option('--low-weight', type=click.FloatRange(min=0.0), default=1.0, show_default=True)
@click.option('--high-weight', type=click.FloatRange(min=0.0), default=1.0, show_default=True)
@click.option('--compat-eq9-verbatim', 'verbatim_eq9', is_flag=True)
@click.pass_obj
@handle_errors
def export_features(config_class, image, out, levels, low_weight, high_weight, verbatim_eq9):
    """Write the refined feature set of IMAGE to OUT (WLFS)."""
    refine_cfg = RefineConfig(low_weight=low_weight, high_weight=high_weight)
    levels = levels or config_class.LEVELS
    pyramid = decompose(to_luma(load_image(image)), levels=levels, verbatim_eq9=verbatim_eq9)
    feature_set = refine(pyramid, refine_cfg, origin=str(image))
    save_feature_file(feature_set, out)
    emit_json({'path': str(out), 'count': len(feature_set), 'dim': feature_set.dim})


@features.command('compare')
@click.argument('a', type=click.Path(path_type=Path))
@click.argument('b', type=click.Path(path_type=Path))
@click.option('--metric', type=click.Choice(METRICS), default='l2', show_default=True)
@click.pass_obj
@handle_errors
def compare_features(config_class, a, b, metric):
    """Hausdorff distance between two WLFS feature files."""
    set_a, set_b = load_feature_file(a), load_feature_file(b)
    detail = hausdorff_detail(set_a, set_b, metric)
    try:
        coupled = coupled_distance(set_a, set_b, metric=metric)
    except CouplingUnavailable:
        coupled = None
    emit_json({
        'hausdorff': detail.distance,
        'forward': detail.forward,
        'backward': detail.backward,
        'similarity': map_similarity(detail.distance),
        'coupled_distance': coupled,
    })


@features.command('bound-study')
@click.option('--trials', type=click.IntRange(min=1), default=1000, show_default=True)
@click.option('--seed', type=int, default=0, show_default=True)
@click.option('--metric', type=click.Choice(METRICS), default='l2', show_default=True)
@click.pass_obj
@handle_errors
def bound_study(config_class, trials, seed, metric):
    """Tabulate how often hausdorff <= coupled distance on random aligned pairs."""
    emit_json(coupling_bound_study(trials=trials, seed=seed, metric=metric).to_dict())


def main():
    """Console-script entry point."""
    cli(prog_name='waveliq')


if __name__ == '__main__':
    main()
