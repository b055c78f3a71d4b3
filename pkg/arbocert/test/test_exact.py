from fractions import Fraction

import numpy as np
import pytest
from sympy import isprime

from arbocert.exact import (INFINITY, NONRESIDUE, CoprimeBasis, NoPrimeError,
                            NotCoprimeError, NotCoveredError, crt_assemble,
                            factor_bounded, format_rat, is_rational_square,
                            prime_in_progression, prime_in_window,
                            refine_coprime_basis, sqrt_mod, to_rat, val_p)


def _random_rationals(n=200, seed=0):
    rng = np.random.RandomState(seed)
    out = []
    for _ in range(n):
        num = int(rng.randint(-10 ** 6, 10 ** 6))
        den = int(rng.randint(1, 10 ** 4))
        out.append(Fraction(num, den))
    return out


@pytest.mark.parametrize('x, expected', [
    ('3/4', Fraction(3, 4)), ('-7', Fraction(-7)), (5, Fraction(5)),
    (Fraction(2, 6), Fraction(1, 3))])
def test_to_rat(x, expected):
    assert to_rat(x) == expected


@pytest.mark.parametrize('text', ['', '1 /2', 'a/b'])
def test_to_rat_malformed(text):
    with pytest.raises(ValueError):
        to_rat(text)


def test_format_rat():
    assert format_rat(Fraction(-3, 4)) == '-3/4'
    assert format_rat(6) == '6'
    for x in _random_rationals(50):
        assert to_rat(format_rat(x)) == x


@pytest.mark.parametrize('x, p, expected', [
    (12, 2, 2), (Fraction(5, 18), 3, -2), (7, 5, 0), (0, 3, INFINITY)])
def test_val_p(x, p, expected):
    assert val_p(x, p) == expected


def test_val_p_is_additive():
    xs = [x for x in _random_rationals(200, seed=1) if x != 0]
    for a, b in zip(xs, xs[1:]):
        for p in (2, 3, 5, 7):
            assert val_p(a * b, p) == val_p(a, p) + val_p(b, p)


def test_val_p_needs_a_prime():
    with pytest.raises(ValueError, match='prime'):
        val_p(12, 4)


def test_is_rational_square():
    assert is_rational_square(Fraction(9, 49))
    assert is_rational_square(0)
    assert not is_rational_square(-4)
    assert not is_rational_square(Fraction(2, 9))


def test_coprime_basis():
    assert refine_coprime_basis([6, 10]).elements == (2, 3, 5)
    # 8 is registered through its root 2, 36 as 6 = 2 * 3
    basis = CoprimeBasis([8, 36])
    assert basis.elements == (2, 3)
    assert basis.exponents(72) == {2: 3, 3: 2}
    assert not basis.covers(10)
    with pytest.raises(NotCoveredError):
        basis.exponents(10)
    with pytest.raises(ValueError):
        refine_coprime_basis([3, 0])


def test_coprime_basis_is_coprime_and_covers():
    rng = np.random.RandomState(3)
    for _ in range(200):
        inputs = [int(x) for x in rng.randint(2, 10 ** 5, size=4)]
        basis = refine_coprime_basis(inputs)
        elements = basis.elements
        for i, a in enumerate(elements):
            for b in elements[i + 1:]:
                assert np.gcd(a, b) == 1
        for x in inputs:
            product = 1
            for b, e in basis.exponents(x).items():
                product *= b ** e
            assert product == x


def test_sqrt_mod():
    ell = 10007
    assert ell % 4 == 3
    for a in range(1, 200):
        r = sqrt_mod(a, ell)
        if r == NONRESIDUE:
            assert pow(a, (ell - 1) // 2, ell) == ell - 1
        else:
            assert r * r % ell == a
    with pytest.raises(ValueError, match='3 mod 4'):
        sqrt_mod(2, 13)


@pytest.mark.parametrize('d, p', [(20, 17), (22, 17), (30, 23), (40, 29)])
def test_prime_in_window(d, p):
    assert prime_in_window(d) == p


@pytest.mark.parametrize('d', [18, 21, 'a'])
def test_prime_in_window_rejects(d):
    with pytest.raises(ValueError):
        prime_in_window(d)


def test_crt_assemble():
    x = crt_assemble([(2, 3), (3, 5), (2, 7)])
    assert x == 23
    with pytest.raises(NotCoprimeError):
        crt_assemble([(1, 4), (1, 6)])


def test_prime_in_progression():
    q = prime_in_progression(1, 2 * 3203, lower=3203)
    assert isprime(q) and q % 3203 == 1 and q > 3203
    assert prime_in_progression(3, 4, lower=3, exclude={7}) == 11
    with pytest.raises(ValueError, match='common factor'):
        prime_in_progression(2, 4)
    with pytest.raises(NoPrimeError):
        prime_in_progression(1, 10 ** 6, max_steps=1, lower=10 ** 6 + 1)


def test_factor_bounded():
    n = 2 ** 5 * 3 * 1000003 * 1000033
    assert factor_bounded(n) == {2: 5, 3: 1, 1000003: 1, 1000033: 1}
    assert factor_bounded(-1) == {}
    # two primes near 10^9 are out of reach of ten rho steps
    assert factor_bounded(1000000007 * 1000000009, trial_bound=100,
                          max_rho_steps=10) is None
