from fractions import Fraction

import numpy as np
import pytest
from sympy import primerange

from arbocert.poly import T, tpolynomial
from arbocert.squareclass import (ARITHMETIC, GEOMETRIC, CharacterVector,
                                  PolyCoprimeBasis, SquareClass,
                                  character_vector, class_of_rational,
                                  class_of_tpolynomial, common_basis,
                                  in_span, independent,
                                  independent_by_characters,
                                  outside_span_by_characters)

PRIMES = list(primerange(3, 60))


def _random_integers(n=200, seed=0):
    rng = np.random.RandomState(seed)
    return [int(x) * int(rng.choice([-1, 1]))
            for x in rng.randint(1, 10 ** 4, size=n)]


def _classes(values):
    return [class_of_rational(v) for v in values]


def test_class_of_rational():
    c = class_of_rational(Fraction(-8, 9))
    assert c.sign == 1
    assert c.parities == frozenset({2})
    assert class_of_rational(Fraction(4, 25)).is_trivial
    with pytest.raises(ValueError, match='0 has no square class'):
        class_of_rational(0)


def test_class_round_trip():
    c = class_of_rational(-10)
    assert SquareClass.from_dict(c.to_dict()) == c


def test_independent():
    result = independent(_classes([2, 3, 6]))
    assert not result.independent
    assert result.witness == (1, 1, 1)
    assert independent(_classes([-1, 2, 5])).independent
    # a class that is a square times a lower one
    assert not independent(_classes([12, 3])).independent


def test_in_span():
    result = in_span(class_of_rational(10), _classes([2, 3, 5]))
    assert result.in_span
    assert result.subset == (0, 2)
    assert not in_span(class_of_rational(7), _classes([2])).in_span
    assert in_span(class_of_rational(49), []).in_span


def test_products_of_generators_are_in_span():
    rng = np.random.RandomState(1)
    values = _random_integers(200, seed=2)
    for i in range(200):
        generators = [values[(i + j) % len(values)] for j in range(4)]
        mask = rng.randint(0, 2, size=4)
        target = int(rng.randint(1, 30)) ** 2
        for g, m in zip(generators, mask):
            if m:
                target *= g
        assert in_span(class_of_rational(target),
                       _classes(generators)).in_span


def test_common_basis_aligns():
    a, b = common_basis(_classes([12, 3]))
    assert a == b


def test_products_keep_their_value():
    product = class_of_rational(6) * class_of_rational(Fraction(-10, 7))
    assert product.value == Fraction(-60, 7)
    target = class_of_rational(Fraction(-15, 7))
    # built over different bases, so only the realigned classes agree
    assert product != target
    a, b = common_basis([product, target])
    assert a == b
    P = class_of_tpolynomial(tpolynomial((T - 1) * (T - 2)))
    Q = class_of_tpolynomial(tpolynomial(T - 2))
    a, b = common_basis([P * Q, class_of_tpolynomial(tpolynomial(T - 1))])
    assert a == b


def test_poly_coprime_basis():
    basis = PolyCoprimeBasis([(T - 1) * (T - 2), (T - 2) * (T - 3)])
    assert len(basis) == 3
    support = basis.support((T - 1) * (T - 3) ** 2)
    assert support == frozenset({tpolynomial(T - 1)})


def test_class_of_tpolynomial():
    P = tpolynomial(5 * (T - 1) ** 3 * (T + 2) ** 2)
    geometric = class_of_tpolynomial(P, GEOMETRIC)
    assert geometric.poly_parities == frozenset({tpolynomial(T - 1)})
    assert not geometric.parities
    arithmetic = class_of_tpolynomial(P, ARITHMETIC)
    assert arithmetic.parities == frozenset({5})
    with pytest.raises(ValueError, match='mode'):
        class_of_tpolynomial(P, 'other')


def test_polynomial_classes_span():
    classes = [class_of_tpolynomial(tpolynomial(P))
               for P in (T - 1, T - 2, (T - 1) * (T - 2) ** 3)]
    assert not independent(classes).independent
    assert in_span(classes[2], classes[:2]).subset == (0, 1)


def test_character_vector():
    v = character_vector({3: 2, 5: 1}, sign=0)
    assert v.bits == (1, 0)
    assert CharacterVector.from_dict(v.to_dict()) == v
    with pytest.raises(ValueError, match='vanishes'):
        character_vector({3: 6})


def test_characters_are_homomorphisms():
    values = [v for v in _random_integers(201, seed=3)
              if all(v % r for r in PRIMES)]
    for a, b in zip(values, values[1:]):
        va = character_vector({r: a % r for r in PRIMES}, int(a < 0))
        vb = character_vector({r: b % r for r in PRIMES}, int(b < 0))
        vab = character_vector({r: a * b % r for r in PRIMES},
                               int(a * b < 0))
        assert vab.bits == tuple(x ^ y for x, y in zip(va.bits, vb.bits))
        assert vab.sign == va.sign ^ vb.sign


def test_characters_decide_only_independence():
    v1 = CharacterVector(primes=(3, 5), bits=(1, 0))
    v2 = CharacterVector(primes=(3, 5), bits=(0, 1))
    assert independent_by_characters([v1, v2]) is True
    assert independent_by_characters([v1, v1]) is None
    target = CharacterVector(primes=(3, 5), bits=(1, 1))
    assert outside_span_by_characters(target, [v1, v2]) is None
    assert outside_span_by_characters(v1, [v2]) is True
    with pytest.raises(ValueError, match='different primes'):
        independent_by_characters(
            [v1, CharacterVector(primes=(3, 7), bits=(1, 0))])


def test_characters_agree_with_exact_classes():
    # independent character images imply independent exact classes
    values = [v for v in _random_integers(400, seed=5)
              if all(v % r for r in PRIMES)]
    for i in range(0, len(values) - 2, 3):
        triple = values[i:i + 3]
        vectors = [character_vector({r: v % r for r in PRIMES}, int(v < 0))
                   for v in triple]
        if independent_by_characters(vectors):
            assert independent(_classes(triple)).independent
