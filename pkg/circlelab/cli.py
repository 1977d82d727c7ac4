#!/usr/bin/env python
"""Command line entry point: ``circle-lab <subcommand> --config <path>``."""
import argparse
import logging
import sys
from typing import List, Optional

from . import create_lab
from .errors import CircleLabError
from .harness import load_experiment, prepare, new_report, run_check, run_counts, run_series, run_integral, \
    run_sums, run_verify, emit_report
from .signals import stage_started, stage_finished, count_completed

logger = logging.getLogger('circlelab')

SUBCOMMANDS = {
    'check': 'Evaluate the hypothesis of the asymptotic formula',
    'count': 'Count N(P) for every configured P',
    'series': 'Truncate the singular series and cross-check it',
    'integral': 'Evaluate the singular integral and the real density',
    'sums': 'Exponential sums, the arc dissection and the alpha classification',
    'verify': 'Run the full pipeline and compare N(P) with the prediction',
}


def _on_stage_started(sender, **kwargs):
    logger.info('Stage %s started', sender)


def _on_stage_finished(sender, **kwargs):
    logger.info('Stage %s finished in %.1f ms', sender, kwargs.get('elapsed_ms', 0.0))


def _on_count(sender, **kwargs):
    logger.debug('Count completed: %s', kwargs)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='circle-lab', description='Circle method laboratory')
    subparsers = parser.add_subparsers(dest='command', metavar='subcommand')
    subparsers.required = True
    for name, help_text in SUBCOMMANDS.items():
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument('--config', required=True, metavar='PATH', help='Experiment file (.json or Python)')
        sub.add_argument('--threads', type=int, help='Worker threads of the chunked kernels')
        sub.add_argument('--seed', type=int, help='Seed of every random generator')
        sub.add_argument('--out', metavar='DIR', help='Output directory of the report files')
        sub.add_argument('-v', '--verbose', action='store_true', help='Log per-chunk detail')
    return parser


def run(command: str, config_path: str, threads: Optional[int] = None, seed: Optional[int] = None,
        out: Optional[str] = None) -> List[str]:
    """Execute one subcommand and write its report files."""
    settings = create_lab(config_path)
    if threads is not None:
        settings['THREADS'] = threads
    if seed is not None:
        settings['SEED'] = seed
    config = load_experiment(settings)

    if command == 'verify':
        report = run_verify(config)
    else:
        instance = prepare(config)
        report = new_report(config, instance)
        if command in ('check', 'series', 'sums'):
            run_check(config, instance, report)
        if command == 'count':
            run_counts(config, instance, report)
        elif command == 'series':
            run_series(config, instance, report)
        elif command == 'integral':
            run_integral(config, instance, report)
        elif command == 'sums':
            run_sums(config, instance, report)
    return emit_report(report, out or config.output_dir)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format='%(asctime)s %(name)s %(levelname)s %(message)s')
    stage_started.connect(_on_stage_started)
    stage_finished.connect(_on_stage_finished)
    count_completed.connect(_on_count)

    try:
        written = run(args.command, args.config, args.threads, args.seed, args.out)
    except CircleLabError as e:
        logger.error('%s', e.to_dict())
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == '__main__':
    sys.exit(main())
