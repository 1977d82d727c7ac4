import pytest

from circlelab.counting import CountJob, Engine
from circlelab.nf import NumberField
from circlelab.polys import PolySystem, BoxRegion


@pytest.fixture
def job_a(rationals: NumberField, instance_a: PolySystem):
    def make(P, engine: Engine = Engine.Direct, split=None) -> CountJob:
        return CountJob(rationals, instance_a, BoxRegion.cube(5), P, engine, split)
    return make
