import json

import numpy as np
import pytest

from arbocert.discseq import disc_poly_sequence
from arbocert.monodromy import (ASSUMED, INFINITE_ORBIT, MORSE_VERIFIED,
                                PCF_DETECTED, MonodromyCertifier,
                                MonodromyReport, certify_monodromy,
                                freshness, morse_check, pcf_detect)
from arbocert.poly import RatPoly


def _random_quadratics(n=10, seed=0):
    """x^2 + c with c a small integer."""
    rng = np.random.RandomState(seed)
    return [RatPoly([int(rng.randint(-10, 11)), 0, 1]) for _ in range(n)]


def _critical_orbit(f, n):
    values = []
    x = 0
    for _ in range(n):
        x = f(x)
        values.append(x)
    return values


@pytest.mark.parametrize('coeffs, expected', [
    ([0, 1, 0, 0, 1], True),
    ([1, 0, 1], True),
    ([-5, 0, 1], True),
    ([0, 0, -2, 0, 1], False),
    ([0, 0, 0, 4, 1], False),
])
def test_morse_check(coeffs, expected):
    assert morse_check(RatPoly(coeffs)) is expected


@pytest.mark.parametrize('coeffs, verdict, level', [
    ([0, 0, 1], PCF_DETECTED, 3),
    ([-2, 0, 1], PCF_DETECTED, 4),
    ([1, 0, 1], INFINITE_ORBIT, 2),
])
def test_pcf_detect(coeffs, verdict, level):
    result = pcf_detect(RatPoly(coeffs), cap=6)
    assert result.verdict == verdict
    assert result.level == level
    assert len(result.fresh) == level


def test_pcf_detect_cap():
    with pytest.raises(ValueError, match='cap should be'):
        pcf_detect(RatPoly([1, 0, 1]), cap=1)


def test_stoll_polynomial_fresh_every_level():
    report = certify_monodromy(RatPoly([1, 0, 1]), 3)
    assert report.evidence == MORSE_VERIFIED
    assert report.verdict == 'SURJECTIVE_THROUGH_LEVEL_3'
    assert report.exit_code == 0
    fresh = [x.to_dict()['fresh'] for x in report.levels_checked]
    assert fresh == [['t - 1'], ['t - 2'], ['t - 5']]


def test_chebyshev_like_fails_at_level_3():
    # critical orbit 0 -> -2 -> 2 -> 2
    report = certify_monodromy(RatPoly([-2, 0, 1]), 3)
    assert report.verdict == 'CRITERION_FAILED_AT_LEVEL_3'
    assert report.exit_code == 1
    assert [x.passed for x in report.levels_checked] == [True, True, False]


def test_freshness_matches_critical_orbit():
    for f in _random_quadratics(10, seed=1):
        orbit = _critical_orbit(f, 3)
        discs = disc_poly_sequence(f, 3, exact_degree_cap=8)
        levels = freshness([D.squarefree for D in discs])
        for n, x in enumerate(levels, start=1):
            assert x.passed == (orbit[n - 1] not in orbit[:n - 1])


def test_disc_over_squarefree_part_is_a_square():
    f = RatPoly([0, 1, 0, 0, 1])
    for D in disc_poly_sequence(f, 2, exact_degree_cap=4):
        quotient = D.value.exquo(D.squarefree)
        _, factors = quotient.sqf_list()
        assert all(m % 2 == 0 for _, m in factors)


def test_odd_degree_is_invalid():
    report = certify_monodromy(RatPoly([0, 1, 0, 1]), 2)
    assert report.verdict == 'INVALID_INPUT'
    assert report.exit_code == 3


def test_morse_failure_is_unknown_unless_assumed():
    f = RatPoly([0, 0, -2, 0, 1])
    report = certify_monodromy(f, 1)
    assert report.evidence is None
    assert report.verdict == 'UNKNOWN'
    report = certify_monodromy(f, 1, hypothesis=ASSUMED)
    assert report.evidence == ASSUMED
    assert report.verdict == 'SURJECTIVE_THROUGH_LEVEL_1'


@pytest.mark.parametrize('kwargs, match', [
    ({'hypothesis': 'galois'}, 'hypothesis should be'),
    ({'path': 'slow'}, 'path should be'),
])
def test_certify_monodromy_invalid_options(kwargs, match):
    with pytest.raises(ValueError, match=match):
        certify_monodromy(RatPoly([1, 0, 1]), 2, **kwargs)


@pytest.mark.parametrize('path', ['exact', 'fast', 'auto'])
def test_paths_agree(path):
    report = certify_monodromy(RatPoly([1, 0, 1]), 3, path=path)
    assert report.verdict == 'SURJECTIVE_THROUGH_LEVEL_3'


def test_report_round_trip():
    report = certify_monodromy(RatPoly([-1, 0, 1]), 2)
    data = json.loads(json.dumps(report.to_dict()))
    restored = MonodromyReport.from_dict(data)
    assert restored.verdict == report.verdict
    assert restored.replay_matches()


def test_monodromy_certifier(capsys):
    certifier = MonodromyCertifier(levels=2, verbose=True)
    certifier.certify(RatPoly([1, 0, 1]))
    assert certifier.verdict_ == 'SURJECTIVE_THROUGH_LEVEL_2'
    out = capsys.readouterr().out
    assert '[MonodromyCertifier] level 2: fresh' in out
