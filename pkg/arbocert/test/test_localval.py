from fractions import Fraction

import pytest

from arbocert.exact import FactorizationError
from arbocert.localval import (BigLocalCertificate, big_local_certificate,
                               find_local_primes, is_eisenstein,
                               newton_polygon, translate_root)
from arbocert.poly import RatPoly


def _two_prime_poly(p=17, q=3, d=20):
    # polygon (0,2)-(p,0)-(d,0) at p, Eisenstein at q
    coeffs = [q * p * p] * p + [q] * (d - p) + [1]
    return RatPoly(coeffs)


def test_newton_polygon():
    polygon = newton_polygon(RatPoly([4, 2, 1]), 2)
    assert polygon.vertices == ((0, 2), (2, 0))
    assert polygon.slopes == [(Fraction(-1), 2)]
    polygon = newton_polygon(RatPoly([Fraction(1, 9), 0, 3, 1]), 3)
    assert polygon.vertices == ((0, -2), (3, 0))


def test_newton_polygon_slopes_sum():
    f = _two_prime_poly()
    polygon = newton_polygon(f, 17)
    assert polygon.slope_multiset() == {Fraction(-2, 17): 17,
                                        Fraction(0): 3}


@pytest.mark.parametrize('coeffs, q, expected', [
    ([2, 2, 1], 2, True), ([4, 0, 1], 2, False), ([3, 1, 1], 3, False),
    ([6, 3, 2], 3, True), ([2, 1], 2, False)])
def test_is_eisenstein(coeffs, q, expected):
    assert is_eisenstein(RatPoly(coeffs), q) is expected


def test_big_local_accepts():
    cert = big_local_certificate(_two_prime_poly(), 17, 3)
    assert cert.accepted
    assert cert.failed_check is None
    assert cert.fixed_points == 3
    data = cert.to_dict()
    assert data['validForAllLevels']
    assert BigLocalCertificate.from_dict(data).to_dict() == data


@pytest.mark.parametrize('p, q, failed', [(7, 3, 'a'), (17, 5, 'b'),
                                          (11, 3, 'c')])
def test_big_local_rejects(p, q, failed):
    cert = big_local_certificate(_two_prime_poly(), p, q)
    assert not cert.accepted
    assert cert.failed_check == failed
    assert cert.to_dict()['failedCheck'] == failed


def test_big_local_invalid():
    with pytest.raises(ValueError, match='distinct'):
        big_local_certificate(_two_prime_poly(), 3, 3)
    with pytest.raises(ValueError, match='even degree'):
        big_local_certificate(RatPoly([1, 0, 0, 1]), 17, 3)


def test_translate_root():
    g = translate_root(RatPoly([1, 0, 1]), 1)
    assert g == RatPoly([1, 2, 1])
    f = _two_prime_poly()
    assert translate_root(f, 0) == f


def test_find_local_primes():
    assert find_local_primes(_two_prime_poly()) == (17, 3)
    assert find_local_primes(_two_prime_poly(p=13, q=5, d=16)) == (13, 5)
    assert find_local_primes(RatPoly([2, 0, 1])) is None
    assert find_local_primes(RatPoly([0, 3, 1])) is None


def test_find_local_primes_gives_up_on_hard_cofactor():
    n = 1000000007 * 1000000009
    f = RatPoly([n, n] + [0] * 18 + [1])
    with pytest.raises(FactorizationError, match='could not split'):
        find_local_primes(f, trial_bound=100, max_rho_steps=10)
