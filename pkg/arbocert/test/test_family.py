import json
from fractions import Fraction

import numpy as np
import pytest
from sympy import isprime

from arbocert.certify import SURJECTIVE_ALL_LEVELS
from arbocert.family import (ConditionChecklist, ConstructionError,
                             FamilyConstructor, FamilyParams, FamilyRecord,
                             build_family_poly, conic_coefficients,
                             conic_discriminant, conic_point_mod_ell,
                             eval_U, eval_V, orbit_signs, rigid_prime_check,
                             two_adic_constant)
from arbocert.poly import RatPoly

VALID_PATTERNS = [(9, 6), (10, 4), (10, 7)]


def _random_rationals(n, seed=0):
    rng = np.random.RandomState(seed)
    return [Fraction(int(rng.randint(-20, 21)), int(rng.randint(1, 6)))
            for _ in range(n)]


@pytest.mark.parametrize('k, u', VALID_PATTERNS)
def test_build_family_poly_derivative(k, u):
    for seed in range(5):
        A, B, C, D = _random_rationals(4, seed)
        f = build_family_poly(k, u, A, B, C, D)
        assert f.degree == 2 * k + 2
        assert f(0) == D
        assert sum(c != 0 for c in f.coeffs) <= 13


@pytest.mark.parametrize('k, u', VALID_PATTERNS)
def test_family_poly_matches_u_and_v(k, u):
    A, B, C, D, x = _random_rationals(5, seed=3)
    f = build_family_poly(k, u, A, B, C, D)
    expected = eval_U(A, B, x, k, u) - C * eval_V(A, B, x, k, u) + D
    assert f(x) == expected


def test_fixed_point_choice_of_c():
    k, u = 9, 6
    A, B, D = 3, 5, -7
    C = eval_U(A, B, D, k, u) / eval_V(A, B, D, k, u)
    f = build_family_poly(k, u, A, B, C, D)
    assert f(D) == D
    assert f(f(0)) == f(0)


@pytest.mark.parametrize('k, u, match', [(3, 5, 'k > u'),
                                         (9, 8, '13 distinct'),
                                         (12, 6, '13 distinct')])
def test_bad_degree_pattern(k, u, match):
    with pytest.raises(ValueError, match=match):
        build_family_poly(k, u, 1, 1, 1, 1)


def test_conic_point_lies_on_conic():
    k, u, p = 9, 6, 17
    candidates = [ell for ell in range(10007, 10400, 4) if isprime(ell)]
    disc = conic_discriminant(k, u, p)
    ell = next(e for e in candidates
               if disc.denominator % e and disc.numerator % e)
    A, B = conic_point_mod_ell(k, u, p, ell)
    value = sum(c * A ** i * B ** j
                for (i, j), c in conic_coefficients(k, u, p).items())
    assert value.denominator % ell
    assert value.numerator % ell == 0
    z = -p * p
    assert eval_V(A, B, z, k, u).numerator % ell != 0


def test_conic_point_needs_ell_3_mod_4():
    with pytest.raises(ValueError, match='3 mod 4'):
        conic_point_mod_ell(9, 6, 17, 10009)


def test_two_adic_constant():
    M = two_adic_constant(9, 6, seed=0)
    assert 1 <= M <= 64
    assert two_adic_constant(9, 6, seed=0) == M


def test_orbit_signs():
    assert orbit_signs(RatPoly([-2, 0, 1]), 0, 3) == [-1, 1, 1]
    assert orbit_signs(RatPoly([-3, 0, 1]), Fraction(1, 2), 2) == [-1, 1]


def test_rigid_prime_check():
    # f(0) = 3 = f(3)
    f = RatPoly([3, -3, 1])
    rng = np.random.RandomState(0)
    for _ in range(20):
        c = int(rng.randint(-30, 31))
        assert rigid_prime_check(f, c, 1, 3)
        assert rigid_prime_check(f, c, 2, 4)
    assert rigid_prime_check(f, Fraction(5, 2), 1, 2)


def test_rigid_prime_check_invalid():
    with pytest.raises(ValueError, match='0 < k < n'):
        rigid_prime_check(RatPoly([3, -3, 1]), 4, 2, 2)
    with pytest.raises(ValueError, match='f\\(0\\) = f\\(f\\(0\\)\\)'):
        rigid_prime_check(RatPoly([1, 0, 1]), 4, 1, 2)


def test_checklist_first_failed():
    checklist = ConditionChecklist(results={i: i != 5 for i in range(1, 9)})
    assert not checklist.all_true
    assert checklist.first_failed == 5
    assert ConditionChecklist(results={1: True}).first_failed == 2


@pytest.fixture(scope='module')
def record():
    return FamilyConstructor(certify_levels=3).construct(20)


def test_construct_degree_20(record):
    P = record.params
    assert (P.d, P.p, P.k, P.u) == (20, 17, 9, 6)
    assert P.ell > 20 ** 5 and P.ell % 4 == 3
    assert P.q % P.ell == 1
    assert P.D == -P.q * P.N ** 2
    assert record.poly.degree == 20
    assert record.poly(P.D) == P.D
    assert record.checklist.all_true
    assert record.local.accepted
    assert record.certificate.verdict == SURJECTIVE_ALL_LEVELS
    assert [e['step']['passed'] for e in record.certificate.disc_classes] \
        == [True] * 3


def test_rigid_primes_of_constructed_poly(record):
    f, C = record.poly, record.params.C
    for k, n in [(1, 2), (1, 3), (2, 3)]:
        assert rigid_prime_check(f, C, k, n)
    rng = np.random.RandomState(4)
    for _ in range(20):
        c = int(rng.randint(-50, 51))
        assert rigid_prime_check(f, c, 1, 2)


def test_family_record_round_trip(record):
    data = json.loads(json.dumps(record.to_dict()))
    assert FamilyParams.from_dict(data['params']) == record.params
    restored = FamilyRecord.from_dict(data)
    assert restored.poly == record.poly
    assert restored.replay_matches()


def test_family_record_tampered(record):
    data = record.to_dict()
    data['poly'][0] = '1'
    with pytest.raises(ConstructionError, match='does not match'):
        FamilyRecord.from_dict(data).replay()


def test_construct_invalid_degree():
    with pytest.raises(ValueError, match='even integer >= 20'):
        FamilyConstructor(certify_levels=0).construct(18)
