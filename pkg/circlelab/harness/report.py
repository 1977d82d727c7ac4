"""Deterministic serialization of run reports."""
import csv
import json
import logging
import os
from typing import Any, Dict, Iterable, List, Sequence

from .pipeline import AsymptoticReport

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
FORMATS = ('json', 'csv', 'text')

COUNT_COLUMNS = ['P', 'N(P)', 'engine', 'wall_time_ms']
SWEEP_COLUMNS = ['sweep', 'x', 'value', 'error']


def report_document(report: AsymptoticReport) -> Dict[str, Any]:
    document = {'schema': SCHEMA_VERSION}
    document.update(report.to_dict())
    return document


def dumps(document: Dict[str, Any]) -> str:
    return json.dumps(document, sort_keys=True, indent=2) + '\n'


def sweep_rows(report: AsymptoticReport) -> List[List[Any]]:
    """Rows (sweep, x, value, error) of every dyadic or parameter sweep in the report."""
    rows = []  # type: List[List[Any]]
    if report.series is not None:
        for H, value in sorted(report.series.gamma_sum_by_H.items()):
            rows.append(['series_gamma_sum', H, float(value), ''])
        for factor in report.series.euler:
            rows.append(['euler_factor', factor.prime.norm, float(factor.factor), factor.depth])
    if report.integral is not None:
        for H, value in sorted(report.integral.JH.items()):
            rows.append(['singular_integral', H, value, report.integral.standard_errors.get(H, '')])
        estimate = report.integral.density_estimate
        if estimate is not None:
            for epsilon, value, low, high, _ in estimate.sweep:
                rows.append(['real_density', epsilon, value, (high - low) / 2])
    if report.sums is not None:
        for minor in report.sums.minor:
            rows.append(['minor_arc', float(minor.P), minor.normalized, ''])
        if report.sums.major is not None:
            for major in report.sums.major.reports:
                rows.append(['major_arc', float(major.P), major.ratio, major.residual])
    for P, ratio in sorted(report.ratios.items()):
        rows.append(['ratio', float(P), ratio, ''])
    return rows


def summary_lines(report: AsymptoticReport) -> List[str]:
    lines = ['verdict: {}'.format(report.verdict)]
    if report.fallback:
        lines.append('fallback: {}'.format(report.fallback))
    if report.hypothesis is not None:
        h = report.hypothesis
        lines.append('hypothesis: {} (margin {}, B = {})'.format(
            'satisfied' if h.overall else 'fails', h.margin,
            ', '.join('B_{}={}'.format(d, b) for d, b in sorted(h.B.items()))))
    for count in report.counts:
        lines.append('N({}) = {} [{}]'.format(count.P, count.count, count.engine))
    if report.series is not None:
        lines.append('singular series: {:.8g} (arc-center sum {:.8g}, matched delta {:.3g}, {})'.format(
            report.series.product, float(report.series.gamma_sum), report.series.agreement_delta,
            report.series.status.value))
    if report.integral is not None:
        line = 'singular integral: {:.8g} at H={} ({})'.format(report.integral.value, report.integral.H,
                                                               report.integral.method.value)
        if report.integral.density_estimate is not None:
            line += ', real density {:.8g}'.format(report.integral.density_estimate.value)
        lines.append(line)
    for P, ratio in sorted(report.ratios.items()):
        lines.append('N({}) / prediction = {:.6f}'.format(P, ratio))
    if report.fitted_exponent is not None:
        lines.append('fitted exponent: {:.4f} (expected {})'.format(report.fitted_exponent,
                                                                   report.expected_exponent))
    if report.sums is not None:
        for sample in report.sums.samples:
            lines.append('alpha {} at P={}: {}'.format([str(c) for c in sample.alpha], sample.classification.P,
                                                       sample.classification.label))
        if report.sums.circle is not None:
            lines.append('circle identity: {}'.format('holds' if report.sums.circle.holds else 'fails'))
        if report.sums.minor_decreasing is not None:
            lines.append('minor arc integrals decrease: {}'.format(report.sums.minor_decreasing))
    if report.verdict == 'exploratory':
        lines.append('exploratory: the asymptotic formula is not claimed')
    return lines


def _write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    with open(path, 'w', newline='') as fd:
        writer = csv.writer(fd)
        writer.writerow(header)
        writer.writerows(rows)


def emit_report(report: AsymptoticReport, out_dir: str, formats: Sequence[str] = FORMATS) -> List[str]:
    """Write report.json, counts.csv, sweeps.csv (plus alpha.csv for alpha samples) and summary.txt.

    I/O errors propagate unchanged.

    Returns:
        The written paths.
    """
    unknown = set(formats) - set(FORMATS)
    if unknown:
        raise ValueError('unknown report formats: {}'.format(', '.join(sorted(unknown))))
    os.makedirs(out_dir, exist_ok=True)
    written = []

    if 'json' in formats:
        path = os.path.join(out_dir, 'report.json')
        with open(path, 'w') as fd:
            fd.write(dumps(report_document(report)))
        written.append(path)

    if 'csv' in formats:
        path = os.path.join(out_dir, 'counts.csv')
        _write_csv(path, COUNT_COLUMNS, [[str(c.P), c.count, c.engine, '{:.3f}'.format(c.wall_time_ms)]
                                         for c in report.counts])
        written.append(path)
        path = os.path.join(out_dir, 'sweeps.csv')
        _write_csv(path, SWEEP_COLUMNS, sweep_rows(report))
        written.append(path)
        if report.sums is not None and report.sums.samples:
            rows = [sample.to_row() for sample in report.sums.samples]
            header = [k for k in rows[0] if k.startswith('alpha_')] + ['P', 're_S', 'im_S', 'L', 'membership']
            path = os.path.join(out_dir, 'alpha.csv')
            _write_csv(path, header, [[row[k] for k in header] for row in rows])
            written.append(path)

    if 'text' in formats:
        path = os.path.join(out_dir, 'summary.txt')
        with open(path, 'w') as fd:
            fd.write('\n'.join(summary_lines(report)) + '\n')
        written.append(path)

    logger.info('Wrote %s', ', '.join(written))
    return written
