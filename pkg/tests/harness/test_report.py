import csv
import json
import os

import pytest

from circlelab.harness import SCHEMA_VERSION, prepare, new_report, run_check, run_counts, run_sums, emit_report, \
    summary_lines


@pytest.fixture
def counted(experiment):
    config = experiment(ALPHA_POINTS=[['1/3']])
    instance = prepare(config)
    report = new_report(config, instance)
    run_check(config, instance, report)
    run_counts(config, instance, report)
    return config, instance, report


class TestEmitReport:

    def test_empty_report(self, experiment, tmpdir):
        config = experiment()
        report = new_report(config, prepare(config))
        written = emit_report(report, str(tmpdir))
        assert [os.path.basename(p) for p in written] == ['report.json', 'counts.csv', 'sweeps.csv', 'summary.txt']
        with open(written[0]) as fd:
            document = json.load(fd)
        assert document['schema'] == SCHEMA_VERSION
        assert document['verdict'] == 'exploratory'
        assert document['counts'] == []

    def test_counts_csv(self, counted, tmpdir):
        _, _, report = counted
        emit_report(report, str(tmpdir), formats=('csv',))
        with open(os.path.join(str(tmpdir), 'counts.csv')) as fd:
            rows = list(csv.reader(fd))
        assert rows[0] == ['P', 'N(P)', 'engine', 'wall_time_ms']
        assert [row[0] for row in rows[1:]] == ['2', '4']

    def test_deterministic_json(self, counted, tmpdir):
        _, _, report = counted
        first = tmpdir.mkdir('first')
        second = tmpdir.mkdir('second')
        emit_report(report, str(first), formats=('json',))
        emit_report(report, str(second), formats=('json',))
        assert first.join('report.json').read() == second.join('report.json').read()

    def test_alpha_csv(self, counted, tmpdir):
        config, instance, report = counted
        run_sums(config, instance, report)
        written = emit_report(report, str(tmpdir), formats=('csv',))
        assert os.path.join(str(tmpdir), 'alpha.csv') in written

    def test_unknown_format(self, counted, tmpdir):
        with pytest.raises(ValueError):
            emit_report(counted[2], str(tmpdir), formats=('xml',))


class TestSummary:

    def test_lines(self, counted):
        lines = summary_lines(counted[2])
        assert lines[0] == 'verdict: asymptotic'
        assert any(line.startswith('N(4) = ') for line in lines)
