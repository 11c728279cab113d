#!/usr/bin/env python
"""
Monotonicity check: build noise, blur and contrast ladders for a set of
references, score them and require the rank correlation between severity
and quality to stay high.
"""
import argparse
import logging
import sys
import tempfile
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent.parent))

from waveliq.bench.distortions import reference_pattern
from waveliq.bench.harness import run_benchmark, write_ladder
from waveliq.io.images import save_image
from waveliq.metric.score import ScoreConfig

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

THRESHOLD = 0.9


def ladder_srcc(references, workdir, seed=0, jobs=1):
    """Per (reference, kind) SRCC between -level and q_p."""
    results = {}
    for ref_path in references:
        manifest, _ = write_ladder(ref_path, workdir / ref_path.stem, seed=seed)
        report = run_benchmark(manifest, ScoreConfig(), use_logistic=False, jobs=jobs)
        for kind, entry in report.by_distortion.items():
            results[(ref_path.stem, kind)] = entry['srcc']
    return results


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument('references', nargs='*', type=Path,
                        help='Reference images (default: five generated patterns)')
    parser.add_argument('--seed', type=int, default=0)
    parser.add_argument('--jobs', type=int, default=1)
    args = parser.parse_args(argv)

    logger.info("🔍 Running ladder acceptance...")
    with tempfile.TemporaryDirectory() as tmp:
        workdir = Path(tmp)
        references = list(args.references)
        if not references:
            for index in range(5):
                path = workdir / f"pattern{index}.png"
                save_image(reference_pattern(seed=index), path)
                references.append(path)

        results = ladder_srcc(references, workdir, seed=args.seed, jobs=args.jobs)

    for (stem, kind), value in sorted(results.items()):
        logger.info(f"  - {stem} {kind}: srcc={value:.4f}")

    failed = False
    overall = float(np.mean(list(results.values())))
    if overall < THRESHOLD:
        logger.error(f"✗ Mean srcc {overall:.4f} below {THRESHOLD}")
        failed = True
    for kind in ('noise', 'blur'):
        values = [value for (_, k), value in results.items() if k == kind]
        mean = float(np.mean(values))
        if mean < THRESHOLD:
            logger.error(f"✗ Mean srcc for {kind} {mean:.4f} below {THRESHOLD}")
            failed = True

    if failed:
        return 1
    logger.info(f"✓ Ladder acceptance passed (mean srcc {overall:.4f})")
    return 0


if __name__ == '__main__':
    exit_code = main()
    sys.exit(exit_code)
