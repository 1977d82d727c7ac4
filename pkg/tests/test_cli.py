import json
import os

import pytest

from circlelab import create_lab
from circlelab.cli import build_parser, main


@pytest.fixture
def config_file(tmpdir):
    def write(**settings):
        document = {
            'SYSTEM': 'x1**2 + x2**2 + x3**2 - x4**2 - x5**2',
            'P_VALUES': [1, 2],
            'B_OVERRIDES': {'2': 0},
        }
        document.update(settings)
        path = tmpdir.join('experiment.json')
        path.write(json.dumps(document))
        return str(path)
    return write


class TestCreateLab:

    def test_defaults(self):
        config = create_lab()
        assert config['SEED'] == 20240917
        assert config['OUTER_MAX_DIMENSION'] == 2

    def test_json(self, config_file):
        config = create_lab(config_file(SEED=3))
        assert config['SEED'] == 3
        assert config['P_VALUES'] == [1, 2]

    def test_python(self, tmpdir):
        path = tmpdir.join('experiment.py')
        path.write("SYSTEM = 'x1'\nP_VALUES = [1]\nthreads = 8\n")
        config = create_lab(str(path))
        assert config['SYSTEM'] == 'x1'
        assert 'threads' not in config


class TestMain:

    def test_count(self, config_file, tmpdir):
        out = str(tmpdir.join('out'))
        assert main(['count', '--config', config_file(), '--out', out, '--threads', '2']) == 0
        with open(os.path.join(out, 'report.json')) as fd:
            document = json.load(fd)
        assert [c['P'] for c in document['counts']] == ['1', '2']
        assert document['counts'][0]['count'] == 73

    def test_check(self, config_file, tmpdir):
        out = str(tmpdir.join('out'))
        assert main(['check', '--config', config_file(), '--out', out]) == 0
        with open(os.path.join(out, 'summary.txt')) as fd:
            assert fd.readline().strip() == 'verdict: asymptotic'

    def test_invalid_configuration(self, config_file, tmpdir):
        assert main(['count', '--config', config_file(P_VALUES=[2, 1]), '--out', str(tmpdir)]) == 1
        assert not os.path.exists(tmpdir.join('report.json'))

    def test_subcommand_is_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])

    def test_config_is_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(['count'])
