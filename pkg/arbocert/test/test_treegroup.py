from collections import Counter

import pytest

from arbocert.frobenius import total_variation
from arbocert.treegroup import (CycleType, EnumerationCapError, TreePortrait,
                                character_products_distinct,
                                cycle_type_on_leaves, enumerate_portraits,
                                group_order, internal_vertices, level_sign,
                                quadratic_character_count_bruteforce,
                                random_element, sample_cycle_types)


def _random_portraits(n=200, d=3, depth=3, seed=0):
    return [random_element(d, depth, seed=seed + i) for i in range(n)]


def test_internal_vertices():
    assert list(internal_vertices(2, 2)) == [(), (0,), (1,)]


def test_group_order_matches_enumeration():
    assert group_order(2, 3) == 128
    assert sum(1 for _ in enumerate_portraits(2, 3)) == 128
    assert group_order(3, 2) == 6 ** 4


def test_enumeration_cap():
    with pytest.raises(EnumerationCapError, match='exceeds the cap'):
        list(enumerate_portraits(3, 2))


def test_quadratic_characters_binary_tree():
    assert quadratic_character_count_bruteforce(2, 3) == 2 ** 3
    assert character_products_distinct(2, 3)


def test_portrait_validation():
    with pytest.raises(ValueError, match='not a permutation'):
        TreePortrait(2, 1, {(): (0, 0)})
    with pytest.raises(ValueError, match='non-internal'):
        TreePortrait(2, 1, {(0,): (1, 0)})
    with pytest.raises(ValueError, match='arity'):
        TreePortrait(1, 2)


def test_apply_is_root_to_leaf():
    g = TreePortrait(2, 2, {(): (1, 0), (1,): (1, 0)})
    # the second letter moves by the label at the original first letter
    assert g.apply((0, 0)) == (1, 0)
    assert g.apply((1, 0)) == (0, 1)
    assert g.level_permutation(1) == [1, 0]


def test_compose_is_associative():
    gs = _random_portraits(60)
    for a, b, c in zip(gs, gs[1:], gs[2:]):
        assert (a * b) * c == a * (b * c)


def test_compose_acts_on_leaves():
    gs = _random_portraits(200, d=2, depth=4, seed=7)
    for g, h in zip(gs, gs[1:]):
        gh = (g * h).leaf_permutation()
        lg, lh = g.leaf_permutation(), h.leaf_permutation()
        assert gh == [lg[i] for i in lh]


def test_inverse():
    identity = TreePortrait.identity(3, 3)
    for g in _random_portraits(50, seed=3):
        assert g * g.inverse() == identity
        assert g.inverse() * g == identity


def test_level_sign_is_a_character():
    gs = _random_portraits(200, d=2, depth=3, seed=11)
    for g, h in zip(gs, gs[1:]):
        for m in (1, 2, 3):
            assert level_sign(g * h, m) == level_sign(g, m) * level_sign(h, m)
    with pytest.raises(ValueError, match='level'):
        level_sign(gs[0], 0)


def test_nested_round_trip():
    for g in _random_portraits(20, d=4, depth=2, seed=5):
        assert TreePortrait.from_nested(4, g.to_nested()) == g


def test_cycle_type():
    ct = CycleType.from_structure({2: 1, 1: 2})
    assert ct.parts == (1, 1, 2)
    assert str(ct) == '1,1,2'
    assert ct.to_list() == [1, 1, 2]
    assert ct.size == 4
    assert cycle_type_on_leaves(TreePortrait.identity(2, 2)) == \
        CycleType((1, 1, 1, 1))


def test_sampled_cycle_types_binary_depth_two():
    counts = sample_cycle_types(2, 2, 100000, random_state=0)
    total = sum(counts.values())
    expected = {CycleType((1, 1, 1, 1)): 1 / 8, CycleType((1, 1, 2)): 2 / 8,
                CycleType((2, 2)): 3 / 8, CycleType((4,)): 2 / 8}
    assert set(counts) == set(expected)
    for ct, freq in expected.items():
        assert abs(counts[ct] / total - freq) < 0.01


def test_sampling_matches_enumeration():
    exact = Counter(cycle_type_on_leaves(g)
                    for g in enumerate_portraits(2, 3))
    sampled = sample_cycle_types(2, 3, 200000, random_state=1,
                                 chunk_size=50000)
    assert sum(sampled.values()) == 200000
    assert total_variation(exact, sampled) < 0.01


def test_sampling_is_seeded():
    a = sample_cycle_types(3, 2, 1000, random_state=42)
    b = sample_cycle_types(3, 2, 1000, random_state=42)
    assert a == b
