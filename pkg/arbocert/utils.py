import collections
from fractions import Fraction


class ArbocertWarning(UserWarning):
    """Raised when a computation silently falls back to a weaker path."""


class LRUDict:
    """ dict with limited capacity

    Using LRU eviction, this keeps the most recently used calibration
    constants without growing with every (degree, level) pair seen"""
    def __init__(self, capacity):
        self.capacity = capacity
        self.cache = collections.OrderedDict()

    def __getitem__(self, key):
        try:
            value = self.cache.pop(key)
            self.cache[key] = value
            return value
        except KeyError:
            return None

    def __setitem__(self, key, value):
        try:
            self.cache.pop(key)
        except KeyError:
            if len(self.cache) >= self.capacity:
                self.cache.popitem(last=False)
        self.cache[key] = value

    def __contains__(self, key):
        return key in self.cache

    def __len__(self):
        return len(self.cache)

    def clear(self):
        self.cache.clear()


def bit_size(x):
    """Bits needed to write the rational x as numerator and denominator."""
    x = Fraction(x)
    return abs(x.numerator).bit_length() + x.denominator.bit_length()


def check_levels(n, name='levels', minimum=1):
    # Check a level count coming from the command line or a caller
    if isinstance(n, bool) or int(n) != n:
        raise ValueError(f'{name} should be an integer, got {n!r}')
    n = int(n)
    if n < minimum:
        raise ValueError(f'{name} should be >= {minimum}, got {n}')
    return n
