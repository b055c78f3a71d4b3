from fractions import Fraction

import numpy as np
import pytest
from sympy import Poly, QQ

from arbocert.poly import (NEG_INFINITY, T, X, FpPoly, PreconditionError,
                           RatPoly, TPoly, ZeroPolynomialError,
                           check_products_identity, discriminant,
                           eval_homogeneous, format_poly, is_separable,
                           iterate, parse_poly, resultant,
                           squarefree_part, tpolynomial)


def _random_polys(n=100, max_degree=5, seed=0):
    rng = np.random.RandomState(seed)
    polys = []
    for _ in range(n):
        degree = int(rng.randint(1, max_degree + 1))
        coeffs = [Fraction(int(rng.randint(-9, 10)), int(rng.randint(1, 4)))
                  for _ in range(degree)]
        coeffs.append(Fraction(int(rng.choice([-3, -1, 1, 2, 5]))))
        polys.append(RatPoly(coeffs))
    return polys


def _random_separable_pairs(n=100, seed=0):
    pairs = []
    candidates = iter(_random_polys(6 * n, seed=seed))
    while len(pairs) < n:
        P, Q = next(candidates), next(candidates)
        if is_separable(P * Q):
            pairs.append((P, Q))
    return pairs


def test_ratpoly_basics():
    f = RatPoly([1, 0, 1])
    assert f.degree == 2
    assert f.coeffs == [1, 0, 1]
    assert f(3) == 10
    assert f.derivative() == RatPoly([0, 2])
    assert RatPoly([0, 0]).degree == NEG_INFINITY
    assert RatPoly([2, 4]).monic() == RatPoly([Fraction(1, 2), 1])
    with pytest.raises(ZeroPolynomialError):
        RatPoly([]).monic()


def test_iterate():
    f = RatPoly([1, 0, 1])
    assert iterate(f, 0) == RatPoly.x()
    assert iterate(f, 2) == RatPoly([2, 0, 2, 0, 1])
    assert iterate(f, 3).degree == 8
    assert [iterate(f, k)(0) for k in range(5)] == [0, 1, 2, 5, 26]
    with pytest.raises(ValueError):
        iterate(f, -1)


def test_iterate_composes():
    for f in _random_polys(20, max_degree=3, seed=1):
        assert iterate(f, 3) == f.compose(iterate(f, 2))


@pytest.mark.parametrize('coeffs, disc', [
    ([1, 0, 1], -4), ([-2, 0, 1], 8), ([1, 1, 1], -3),
    ([0, -1, 0, 1], 4)])
def test_discriminant_small(coeffs, disc):
    assert discriminant(RatPoly(coeffs)) == disc


def test_resultant():
    # Res(x^2 + 1, x - 2) = 5
    assert resultant(RatPoly([1, 0, 1]), RatPoly([-2, 1])) == 5
    assert resultant(RatPoly([3]), RatPoly([1, 0, 1])) == 9
    with pytest.raises(ZeroPolynomialError):
        resultant(RatPoly([]), RatPoly([1, 1]))


def test_products_identity():
    pairs = _random_separable_pairs(100, seed=2)
    assert all(check_products_identity(P, Q) for P, Q in pairs)


def test_products_identity_preconditions():
    with pytest.raises(PreconditionError, match='separable'):
        check_products_identity(RatPoly([-1, 1]), RatPoly([-1, 1]))
    with pytest.raises(PreconditionError):
        check_products_identity(RatPoly([2]), RatPoly([-1, 1]))


def test_disc_in_t():
    D = discriminant(TPoly.from_ratpoly(RatPoly([1, 0, 1])))
    assert D == tpolynomial(4 * T - 4)
    D2 = discriminant(TPoly.from_ratpoly(RatPoly([1, 0, 1]), t=0))
    assert D2 == tpolynomial(-4)


def test_squarefree_part():
    f = RatPoly([0, 0, 2]) * RatPoly([1, 1])
    assert squarefree_part(f) == RatPoly([1, 1])
    P = tpolynomial(3 * (T - 1) ** 3 * (T + 2) ** 2 * T)
    assert squarefree_part(P) == tpolynomial((T - 1) * T)
    with pytest.raises(ZeroPolynomialError):
        squarefree_part(RatPoly([]))


def test_is_separable():
    assert is_separable(RatPoly([1, 0, 1]))
    assert not is_separable(RatPoly([1, 2, 1]))


def test_eval_homogeneous_matches_fractions():
    rng = np.random.RandomState(4)
    for f in _random_polys(50, seed=3):
        num, den = int(rng.randint(-50, 50)), int(rng.randint(1, 20))
        a, b = eval_homogeneous(f, num, den)
        assert b > 0
        assert Fraction(a, b) == f(Fraction(num, den))


@pytest.mark.parametrize('text, coeffs', [
    ('1,0,1', [1, 0, 1]), ('-2, 0, 1', [-2, 0, 1]),
    ('x^2 + 1', [1, 0, 1]), ('1/2,3', [Fraction(1, 2), 3]),
    ('x**4 + x', [0, 1, 0, 0, 1])])
def test_parse_poly(text, coeffs):
    assert parse_poly(text) == RatPoly(coeffs)


@pytest.mark.parametrize('text', ['', 'x^2 + y'])
def test_parse_poly_rejects(text):
    with pytest.raises(ValueError):
        parse_poly(text)


def test_format_poly():
    assert format_poly(RatPoly([Fraction(-1, 2), 0, 1])) == '-1/2,0,1'
    for f in _random_polys(30, seed=5):
        assert parse_poly(format_poly(f)) == f


def test_fppoly():
    f = RatPoly([Fraction(1, 2), 0, 3])
    fp = FpPoly.from_ratpoly(f, 5)
    assert fp.coeffs == (3, 0, 3)
    assert fp.to_gf() == [3, 0, 3]
    assert FpPoly((5, 10), 5).degree == NEG_INFINITY
    with pytest.raises(ValueError):
        FpPoly.from_ratpoly(f, 2)


def test_tpoly_coeffs():
    P = TPoly(Poly(T * X ** 2 - 1, X, T, domain=QQ))
    assert P.degree == 2
    assert P.coeffs[2] == tpolynomial(T)
    assert P.coeffs[1] == tpolynomial(0)
