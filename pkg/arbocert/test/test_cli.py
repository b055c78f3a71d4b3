import json

import pytest

from arbocert.cli import build_parser, run
from arbocert.utils import ArbocertWarning


def test_certify_stoll(capsys):
    code = run(['certify', '--poly', '1,0,1', '--t', '0', '--levels', '5',
                '--mode', 'quadratic'])
    assert code == 0
    out = capsys.readouterr().out
    assert 'verdict: SURJECTIVE_THROUGH_LEVEL_5' in out


def test_certify_negative_leading_value(capsys):
    code = run(['certify', '--poly', '-2,0,1', '--levels', '3'])
    assert code == 1
    assert 'CRITERION_FAILED_AT_LEVEL_2' in capsys.readouterr().out


def test_certify_invalid_input():
    assert run(['certify', '--poly', '1,1,0,1']) == 3


@pytest.mark.parametrize('argv', [
    ['certify', '--bogus'],
    ['certify'],
    ['certify', '--poly', '1,0,1', '--mode', 'galois'],
    [],
])
def test_malformed_flags(argv):
    assert run(argv) == 3


def test_unparsable_polynomial(capsys):
    assert run(['certify', '--poly', 'x^2 + y']) == 3
    assert 'arbocert: error' in capsys.readouterr().err


def test_group(capsys):
    assert run(['group', '--arity', '2', '--depth', '3']) == 0
    out = capsys.readouterr().out
    assert '|Aut(T_3)| for d = 2: 128' in out
    assert 'quadratic characters: 8' in out


def test_monodromy(capsys):
    assert run(['monodromy', '--poly', 'x^2 + 1', '--levels', '2']) == 0
    assert 'verdict: SURJECTIVE_THROUGH_LEVEL_2' in capsys.readouterr().out


def test_frobenius(capsys):
    with pytest.warns(ArbocertWarning):
        code = run(['frobenius', '--poly', 'x^2 + 1', '--prime-bound',
                    '2000', '--samples', '10000'])
    assert code == 0
    out = capsys.readouterr().out
    assert 'TV distance by prime bound:' in out
    assert '  100: ' in out
    assert '  2000: ' in out


def test_replay_certificate(tmp_path, capsys):
    path = tmp_path / 'cert.json'
    assert run(['certify', '--poly', '1,0,1', '--levels', '3',
                '--json', str(path)]) == 0
    data = json.loads(path.read_text())
    assert data['verdict'] == 'SURJECTIVE_THROUGH_LEVEL_3'
    assert run(['replay', str(path)]) == 0
    assert 'replay: identical' in capsys.readouterr().out


def test_replay_detects_edits(tmp_path, capsys):
    path = tmp_path / 'cert.json'
    run(['certify', '--poly', '1,0,1', '--levels', '2', '--json',
         str(path)])
    data = json.loads(path.read_text())
    data['verdict'] = 'UNKNOWN'
    path.write_text(json.dumps(data))
    assert run(['replay', str(path)]) == 1
    assert 'replay: DIFFERS' in capsys.readouterr().out


def test_parser_defaults():
    args = build_parser().parse_args(['certify', '--poly', '1,0,1'])
    assert args.levels == 3
    assert args.mode == 'quadratic'
    assert args.t == '0'
