import pytest
from mock import MagicMock

from circlelab.counting import CountResult
from circlelab.errors import StageError
from circlelab.harness import AsymptoticReport, prepare, new_report, stage, run_check, run_counts, run_sums, \
    run_verify
from circlelab.signals import stage_started, stage_finished


class TestStage:

    def test_signals(self):
        started, finished = MagicMock(), MagicMock()
        stage_started.connect(started)
        stage_finished.connect(finished)
        try:
            with stage('warmup'):
                pass
        finally:
            stage_started.disconnect(started)
            stage_finished.disconnect(finished)
        started.assert_called_once_with('warmup')
        assert finished.call_args[0] == ('warmup',)
        assert finished.call_args[1]['elapsed_ms'] >= 0

    def test_wraps_errors(self):
        with pytest.raises(StageError) as info:
            with stage('warmup'):
                raise ValueError('boom')
        assert info.value.stage == 'warmup'
        assert info.value.to_dict()['errors'][0]['stage'] == 'warmup'
        assert isinstance(info.value.__cause__, ValueError)


class TestPipeline:

    def test_counts(self, experiment):
        config = experiment()
        instance = prepare(config)
        report = new_report(config, instance)
        counts = run_counts(config, instance, report)
        assert [c.P for c in counts] == [2, 4]
        assert all(c.engine == 'mitm' for c in counts)
        assert report.verdict == 'exploratory'
        assert report.prediction == {}

    def test_check(self, experiment):
        config = experiment()
        instance = prepare(config)
        report = new_report(config, instance)
        hypothesis = run_check(config, instance, report)
        assert hypothesis.overall
        assert report.verdict == 'asymptotic'
        assert report.estimates[0].value == 0

    def test_sums(self, experiment):
        config = experiment(P_VALUES=[1, 4], ALPHA_POINTS=[['1/3']], MAJOR_ARC_BETA=['1/2'])
        instance = prepare(config)
        report = new_report(config, instance)
        sums = run_sums(config, instance, report)
        assert len(sums.plans) == 1
        assert len(sums.samples) == 1
        assert set(sums.samples[0].e_grid) == {0, 1, 2}
        assert sums.circle.holds
        assert len(sums.minor) == 1
        assert len(sums.major.reports) == 1

    def test_parse_failure_names_the_stage(self, experiment):
        with pytest.raises(StageError) as info:
            prepare(experiment(SYSTEM='x1 +* x2'))
        assert info.value.stage == 'parse'

    @pytest.mark.slow
    def test_verify(self, experiment):
        report = run_verify(experiment(P_VALUES=[2, 4, 8]))
        assert report.verdict == 'asymptotic'
        assert report.expected_exponent == 3
        assert set(report.ratios) == {2, 4, 8}
        assert report.fitted_exponent is not None
        assert report.series.product > 0


class TestAsymptoticReport:

    def _report(self, counts):
        report = AsymptoticReport({}, 1, 5, 2)
        report.counts = [CountResult(P, N, 'direct', 0.0) for P, N in counts]
        return report

    def test_fit_uses_P_equal_to_one(self):
        report = self._report([(1, 73), (2, 1000), (3, 5000)])
        assert isinstance(report.fitted_exponent, float)

    def test_fit_recovers_a_power_law(self):
        report = self._report([(P, 7 * P ** 3) for P in (1, 2, 4, 8)])
        assert report.fitted_exponent == pytest.approx(3.0)

    def test_fit_needs_three_positive_counts(self):
        assert self._report([(1, 73), (2, 0), (3, 5000)]).fitted_exponent is None
