"""
Aut(T_n) of the complete rooted d-ary tree, as an iterated wreath product.

An element is stored by its portrait: one permutation of {0, ..., d-1}
per internal vertex, vertices being words over {0, ..., d-1} of length
< n. The action is a left action read from the root to the leaves::

    g(a_1 ... a_k) = g_()(a_1) g_(a_1)(a_2) ... g_(a_1...a_{k-1})(a_k)

so the product g.h (apply h first) has labels (g.h)_v = g_{h(v)} o h_v.
Vertices of a level are indexed by their base-d value, which matches the
lexicographic order of the words.
"""
import itertools
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np
from sklearn.utils import check_random_state
from sympy.combinatorics import Permutation

ENUMERATION_CAP = 1024


class EnumerationCapError(ValueError):
    pass


def _check_shape(d, n):
    if int(d) != d or d < 2:
        raise ValueError(f'arity should be an integer >= 2, got {d!r}')
    if int(n) != n or n < 0:
        raise ValueError(f'depth should be a non-negative integer, got {n!r}')
    return int(d), int(n)


def internal_vertices(d, n):
    """Words of length < n, level by level, lexicographic in each level."""
    for k in range(n):
        for word in itertools.product(range(d), repeat=k):
            yield word


@dataclass(frozen=True, order=True)
class CycleType:
    """Multiset of cycle lengths, stored sorted ascending."""
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, 'parts', tuple(sorted(int(p)
                                                       for p in self.parts)))

    @classmethod
    def from_structure(cls, structure):
        """From a {length: count} mapping."""
        parts = []
        for length, count in structure.items():
            parts.extend([length] * count)
        return cls(tuple(parts))

    @property
    def size(self):
        return sum(self.parts)

    def to_list(self):
        return list(self.parts)

    def __str__(self):
        return ','.join(map(str, self.parts))


class TreePortrait:
    """Automorphism of the depth-n d-ary tree.

    Parameters
    ----------
    d : int
        Arity, >= 2.
    n : int
        Depth, >= 0.
    labels : dict, optional
        vertex word (tuple) -> permutation (tuple, perm[i] is the image of
        i). Vertices left out are labelled by the identity.
    """

    def __init__(self, d, n, labels=None):
        self.d, self.n = _check_shape(d, n)
        identity = tuple(range(self.d))
        labels = labels or {}
        self.labels = {}
        for v in internal_vertices(self.d, self.n):
            perm = tuple(int(a) for a in labels.get(v, identity))
            if sorted(perm) != list(identity):
                raise ValueError(f'Label {perm} at {v} is not a permutation'
                                 f' of range({self.d})')
            self.labels[v] = perm
        unknown = set(labels) - set(self.labels)
        if unknown:
            raise ValueError(f'Labels at non-internal vertices: '
                             f'{sorted(unknown)}')

    @classmethod
    def identity(cls, d, n):
        return cls(d, n)

    def apply(self, word):
        """Image of a vertex (a word of length <= n)."""
        word = tuple(word)
        if len(word) > self.n:
            raise ValueError(f'{word} is deeper than the tree')
        image = []
        for k, a in enumerate(word):
            image.append(self.labels[word[:k]][a])
        return tuple(image)

    def inverse(self):
        labels = {}
        for v, perm in self.labels.items():
            inv = [0] * self.d
            for a, b in enumerate(perm):
                inv[b] = a
            labels[self.apply(v)] = tuple(inv)
        return TreePortrait(self.d, self.n, labels)

    def level_permutation(self, m):
        """Permutation of the d^m level-m vertices, as an index list."""
        if not 0 <= m <= self.n:
            raise ValueError(f'level should be in [0, {self.n}], got {m}')
        perm = [0]
        for k in range(m):
            perm = [perm[v] * self.d + self.labels[word][a]
                    for v, word in enumerate(itertools.product(
                        range(self.d), repeat=k))
                    for a in range(self.d)]
        return perm

    def leaf_permutation(self):
        return self.level_permutation(self.n)

    def __mul__(self, other):
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, TreePortrait):
            return NotImplemented
        return (self.d, self.n, self.labels) == (other.d, other.n,
                                                 other.labels)

    def __hash__(self):
        return hash((self.d, self.n, tuple(self.labels.values())))

    def __repr__(self):
        moved = {v: p for v, p in self.labels.items()
                 if p != tuple(range(self.d))}
        return f'TreePortrait(d={self.d}, n={self.n}, labels={moved})'

    def to_nested(self):
        """Labels as nested lists: level -> vertex index -> permutation."""
        return [[list(self.labels[word])
                 for word in itertools.product(range(self.d), repeat=k)]
                for k in range(self.n)]

    @classmethod
    def from_nested(cls, d, nested):
        labels = {}
        for k, level in enumerate(nested):
            words = list(itertools.product(range(d), repeat=k))
            if len(level) != len(words):
                raise ValueError(f'Level {k} should have {len(words)} '
                                 f'labels, got {len(level)}')
            labels.update(zip(words, (tuple(p) for p in level)))
        return cls(d, len(nested), labels)


def compose(g, h):
    """Portrait of g.h, the automorphism applying h then g."""
    if (g.d, g.n) != (h.d, h.n):
        raise ValueError(f'Cannot compose portraits of shapes '
                         f'{(g.d, g.n)} and {(h.d, h.n)}')
    labels = {}
    for v, h_perm in h.labels.items():
        g_perm = g.labels[h.apply(v)]
        labels[v] = tuple(g_perm[b] for b in h_perm)
    return TreePortrait(g.d, g.n, labels)


def level_sign(g, m):
    """chi_m(g): sign of the permutation g induces on level m."""
    if not 1 <= m <= g.n:
        raise ValueError(f'level should be in [1, {g.n}], got {m}')
    return int(Permutation(g.level_permutation(m)).signature())


def group_order(d, n):
    """|Aut(T_n)| = (d!)^(1 + d + ... + d^(n-1))."""
    d, n = _check_shape(d, n)
    return math.factorial(d) ** ((d ** n - 1) // (d - 1))


def enumerate_portraits(d, n, cap=ENUMERATION_CAP):
    """All elements of Aut(T_n), refusing groups larger than cap."""
    d, n = _check_shape(d, n)
    order = group_order(d, n)
    if order > cap:
        raise EnumerationCapError(
            f'|Aut(T_{n})| = {order} for d={d} exceeds the cap {cap}')
    vertices = list(internal_vertices(d, n))
    perms = list(itertools.permutations(range(d)))
    for choice in itertools.product(perms, repeat=len(vertices)):
        yield TreePortrait(d, n, dict(zip(vertices, choice)))


def _mul(a, b):
    return tuple(a[i] for i in b)


def _inv(a):
    inv = [0] * len(a)
    for i, j in enumerate(a):
        inv[j] = i
    return tuple(inv)


def _closure(generators, identity):
    subgroup = {identity}
    frontier = [identity]
    while frontier:
        new = []
        for x in frontier:
            for s in generators:
                y = _mul(x, s)
                if y not in subgroup:
                    subgroup.add(y)
                    new.append(y)
        frontier = new
    return subgroup


def quadratic_character_count_bruteforce(d=2, n=3, cap=ENUMERATION_CAP):
    """|G / [G, G]| for G = Aut(T_n), by commutator closure.

    Elements are handled through their (faithful) action on the leaves.
    The quotient is checked to be an elementary abelian 2-group, so its
    order is the number of homomorphisms G -> {+1, -1}.
    """
    elements = [tuple(g.leaf_permutation())
                for g in enumerate_portraits(d, n, cap)]
    identity = tuple(range(d ** n))
    inverses = {a: _inv(a) for a in elements}
    commutators = {_mul(_mul(a, b), _mul(inverses[a], inverses[b]))
                   for a in elements for b in elements}
    derived = _closure(commutators, identity)
    if any(_mul(a, a) not in derived for a in elements):
        raise ValueError('G/[G,G] is not an elementary abelian 2-group')
    return len(elements) // len(derived)


def character_products_distinct(d, n, cap=ENUMERATION_CAP):
    """Whether the 2^n products of chi_1, ..., chi_n are distinct maps."""
    elements = list(enumerate_portraits(d, n, cap))
    signs = np.array([[level_sign(g, m) for m in range(1, n + 1)]
                      for g in elements])
    tables = set()
    for subset in itertools.product([0, 1], repeat=n):
        mask = np.array(subset, dtype=bool)
        tables.add(tuple(np.prod(signs[:, mask], axis=1)))
    return len(tables) == 2 ** n


def random_element(d, n, seed=None):
    """Uniform element: every label independently uniform in S_d."""
    d, n = _check_shape(d, n)
    rng = check_random_state(seed)
    labels = {v: tuple(rng.permutation(d))
              for v in internal_vertices(d, n)}
    return TreePortrait(d, n, labels)


def cycle_type_on_leaves(g):
    perm = Permutation(g.leaf_permutation())
    return CycleType.from_structure(perm.cycle_structure)


def _random_leaf_images(rng, d, n, size):
    images = np.zeros((size, 1), dtype=np.int64)
    for k in range(n):
        labels = np.argsort(rng.rand(size, d ** k, d), axis=2)
        images = (images[:, :, None] * d + labels).reshape(size,
                                                           d ** (k + 1))
    return images


def _cycle_lengths(images):
    # length of the cycle through each leaf, by iterating the permutation
    size, leaves = images.shape
    start = np.arange(leaves)
    rows = np.arange(size)[:, None]
    lengths = np.zeros_like(images)
    current = images.copy()
    for step in range(1, leaves + 1):
        lengths[(current == start) & (lengths == 0)] = step
        if lengths.all():
            break
        current = images[rows, current]
    return lengths


def sample_cycle_types(d, n, n_samples, random_state=None,
                       chunk_size=100000):
    """Leaf cycle types of n_samples uniform elements of Aut(T_n).

    Returns
    -------
    collections.Counter
        CycleType -> number of samples.
    """
    d, n = _check_shape(d, n)
    rng = check_random_state(random_state)
    counts = Counter()
    remaining = int(n_samples)
    while remaining > 0:
        size = min(chunk_size, remaining)
        remaining -= size
        lengths = np.sort(_cycle_lengths(
            _random_leaf_images(rng, d, n, size)), axis=1)
        rows, row_counts = np.unique(lengths, axis=0, return_counts=True)
        for row, count in zip(rows, row_counts):
            values, multiplicities = np.unique(row, return_counts=True)
            structure = {int(L): int(m) // int(L)
                         for L, m in zip(values, multiplicities)}
            counts[CycleType.from_structure(structure)] += int(count)
    return counts
