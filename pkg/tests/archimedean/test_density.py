import pytest

from circlelab.archimedean import real_density, clopper_pearson
from circlelab.nf import NumberField
from circlelab.polys import PolySystem


class TestClopperPearson:

    def test_no_hits(self):
        low, high = clopper_pearson(0, 100, 0.95)
        assert low == 0.0
        assert 0 < high < 0.05

    def test_all_hits(self):
        assert clopper_pearson(100, 100, 0.95)[1] == 1.0

    def test_contains_the_rate(self):
        low, high = clopper_pearson(50, 100, 0.95)
        assert low < 0.5 < high


class TestRealDensity:

    def test_linear_form(self, rationals: NumberField, single_variable: PolySystem):
        estimate = real_density(rationals, single_variable, 0.01, samples=200000)
        assert estimate.value == pytest.approx(1, abs=0.1)
        assert estimate.low <= estimate.value <= estimate.high
        assert [e for e, _, _, _, _ in estimate.sweep] == [0.01, 0.005, 0.0025]

    def test_seeded(self, rationals: NumberField, single_variable: PolySystem):
        first = real_density(rationals, single_variable, 0.05, samples=10000, seed=3)
        second = real_density(rationals, single_variable, 0.05, samples=10000, seed=3)
        assert first.hits == second.hits

    def test_thread_count_is_irrelevant(self, rationals: NumberField, single_variable: PolySystem):
        one = real_density(rationals, single_variable, 0.05, samples=10000, batch=1000, threads=1)
        four = real_density(rationals, single_variable, 0.05, samples=10000, batch=1000, threads=4)
        assert one.hits == four.hits

    def test_epsilon_must_be_positive(self, rationals: NumberField, single_variable: PolySystem):
        with pytest.raises(ValueError):
            real_density(rationals, single_variable, -0.1)

    def test_to_dict(self, rationals: NumberField, single_variable: PolySystem):
        document = real_density(rationals, single_variable, 0.05, samples=1000).to_dict()
        assert len(document['sweep']) == 3
        assert document['samples'] == 1000
