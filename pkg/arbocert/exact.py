"""
Exact integer and rational arithmetic.

Rationals are plain :class:`fractions.Fraction` values. Everything that
needs number theory (primality, perfect powers, CRT, Pollard rho) goes
through :mod:`sympy.ntheory`.

Square-class computations never factor the integers produced by
iteration; they only need a *coprime basis*: a list of pairwise coprime
integers >= 2 such that every registered input is, up to sign, a product
of powers of basis elements. Once no basis element is a perfect square, a
rational is a square iff it is positive and every basis exponent is even.
"""
import math
from fractions import Fraction

from sympy import (factorint, integer_nthroot, isprime, multiplicity,
                   nextprime, perfect_power)
from sympy.ntheory import pollard_rho
from sympy.ntheory.modular import crt
from sympy.ntheory.primetest import is_square

INFINITY = math.inf
NONRESIDUE = 'nonresidue'

# Elements larger than this are only reduced by square roots, which is
# all the parity bookkeeping needs.
_PERFECT_POWER_BITS = 4096


class NoPrimeError(ValueError):
    pass


class NotCoprimeError(ValueError):
    pass


class NotCoveredError(ValueError):
    pass


class FactorizationError(ValueError):
    pass


def to_rat(x):
    """Convert an int, a Fraction, a sympy Rational or an "a/b" string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        text = x.strip()
        if not text or any(c.isspace() for c in text):
            raise ValueError(f'Malformed rational {x!r}')
        return Fraction(text)
    if hasattr(x, 'p') and hasattr(x, 'q'):
        return Fraction(int(x.p), int(x.q))
    if hasattr(x, 'numerator') and hasattr(x, 'denominator'):
        return Fraction(int(x.numerator), int(x.denominator))
    raise TypeError(f'Cannot interpret {x!r} as a rational number')


def format_rat(x):
    x = to_rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f'{x.numerator}/{x.denominator}'


def _check_prime(p):
    if not isinstance(p, int) or isinstance(p, bool) or not isprime(p):
        raise ValueError(f'Expected a prime number, got {p!r}')


def val_p(x, p):
    """p-adic valuation of a rational; ``INFINITY`` for zero.

    Parameters
    ----------
    x : rational
    p : int
        A prime.

    Returns
    -------
    int or INFINITY
    """
    _check_prime(p)
    x = to_rat(x)
    if x == 0:
        return INFINITY
    num = abs(x.numerator)
    v = multiplicity(p, num) if num % p == 0 else 0
    if x.denominator % p == 0:
        v -= multiplicity(p, x.denominator)
    return int(v)


def is_rational_square(x):
    x = to_rat(x)
    if x < 0:
        return False
    if x == 0:
        return True
    return bool(is_square(x.numerator)) and bool(is_square(x.denominator))


def _power_root(m):
    while m > 1 and is_square(m):
        m = int(integer_nthroot(m, 2)[0])
    if 1 < m and m.bit_length() <= _PERFECT_POWER_BITS:
        power = perfect_power(m)
        if power:
            m = int(power[0])
    return m


class CoprimeBasis:
    """Pairwise coprime integers, none of them a perfect square.

    Elements below 4096 bits are also reduced to their smallest perfect
    power root, so that 8 is registered as 2. The sign is handled by the
    formal generator ``sign_generator``.

    Parameters
    ----------
    inputs : iterable of int, optional
        Nonzero integers to register.
    """
    sign_generator = -1

    def __init__(self, inputs=()):
        self._elements = []
        self.refine(inputs)

    @property
    def elements(self):
        return tuple(sorted(self._elements))

    def __len__(self):
        return len(self._elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f'CoprimeBasis({list(self.elements)})'

    def refine(self, inputs):
        """Register more integers, splitting elements until coprime."""
        for x in inputs:
            x = int(x)
            if x == 0:
                raise ValueError('Cannot register 0 in a coprime basis')
            self._insert(abs(x))
        return self

    def _insert(self, n):
        work = [n]
        while work:
            m = _power_root(work.pop())
            if m == 1:
                continue
            for i, b in enumerate(self._elements):
                g = math.gcd(m, b)
                if g > 1:
                    del self._elements[i]
                    work.extend([g, b // g, m // g])
                    break
            else:
                self._elements.append(m)

    def covers(self, n):
        try:
            self.exponents(n)
        except NotCoveredError:
            return False
        return True

    def exponents(self, n):
        """Exponent of each basis element in the nonzero integer n.

        Returns
        -------
        dict
            basis element -> exponent, zero exponents omitted.
        """
        n = abs(int(n))
        if n == 0:
            raise ValueError('0 has no exponent vector')
        exponents = {}
        for b in self._elements:
            if n % b == 0:
                e = int(multiplicity(b, n))
                n //= b ** e
                exponents[b] = e
        if n != 1:
            raise NotCoveredError(
                f'Cofactor {n} is not a product of basis elements')
        return exponents


def refine_coprime_basis(inputs):
    """Coprime basis of a list of nonzero integers.

    Examples
    --------
    >>> refine_coprime_basis([6, 10]).elements
    (2, 3, 5)
    """
    inputs = [int(x) for x in inputs]
    if any(x == 0 for x in inputs):
        raise ValueError('All inputs of refine_coprime_basis should be '
                         'nonzero')
    return CoprimeBasis(inputs)


def sqrt_mod(a, ell):
    """Square root modulo a prime ell = 3 (mod 4), or ``NONRESIDUE``."""
    _check_prime(ell)
    if ell % 4 != 3:
        raise ValueError(f'sqrt_mod needs a prime ell = 3 mod 4, got {ell}')
    a %= ell
    if a == 0:
        return 0
    if pow(a, (ell - 1) // 2, ell) != 1:
        return NONRESIDUE
    r = pow(a, (ell + 1) // 4, ell)
    assert r * r % ell == a
    return r


def prime_in_window(d):
    """Smallest prime p with d/2 + 5 <= p <= d - 3, for even d >= 20."""
    if not isinstance(d, int) or d % 2 or d < 20:
        raise ValueError(f'degree should be an even integer >= 20, got {d!r}')
    low, high = d // 2 + 5, d - 3
    p = int(nextprime(low - 1))
    if p > high:
        raise NoPrimeError(f'No prime in [{low}, {high}]')
    return p


def crt_assemble(congruences):
    """Least non-negative solution of x = r_i (mod m_i).

    Parameters
    ----------
    congruences : list of (residue, modulus)
        Moduli have to be pairwise coprime.
    """
    congruences = [(int(r), int(m)) for r, m in congruences]
    if not congruences:
        return 0
    moduli = [m for _, m in congruences]
    if any(m < 1 for m in moduli):
        raise ValueError(f'Moduli should be positive, got {moduli}')
    for i, mi in enumerate(moduli):
        for mj in moduli[i + 1:]:
            if math.gcd(mi, mj) != 1:
                raise NotCoprimeError(
                    f'Moduli {mi} and {mj} are not coprime')
    residues = [r % m for r, m in congruences]
    solution, modulus = crt(moduli, residues)
    return int(solution) % int(modulus)


def prime_in_progression(residue, modulus, lower=2, exclude=(),
                         max_steps=10 ** 6):
    """Smallest prime > lower congruent to residue mod modulus."""
    residue %= modulus
    if math.gcd(residue, modulus) != 1:
        raise ValueError(
            f'No primes are {residue} mod {modulus} (common factor)')
    start = lower + 1 + ((residue - lower - 1) % modulus)
    candidate = start
    for _ in range(max_steps):
        if candidate not in exclude and isprime(candidate):
            return candidate
        candidate += modulus
    raise NoPrimeError(
        f'No prime = {residue} mod {modulus} found after {max_steps} steps')


def factor_bounded(n, trial_bound=10 ** 6, max_rho_steps=10 ** 5):
    """Factor |n| by trial division then a capped Pollard rho.

    Returns
    -------
    dict or None
        prime -> exponent, or None when some composite cofactor could not
        be split within the step cap.
    """
    n = abs(int(n))
    if n == 0:
        raise ValueError('Cannot factor 0')
    factors = {}
    pending = []
    for m, e in factorint(n, limit=trial_bound).items():
        if m <= trial_bound or isprime(m):
            factors[int(m)] = factors.get(int(m), 0) + int(e)
        else:
            pending.extend([int(m)] * int(e))
    while pending:
        m = pending.pop()
        if isprime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        power = perfect_power(m)
        if power:
            pending.extend([int(power[0])] * int(power[1]))
            continue
        split = pollard_rho(m, max_steps=max_rho_steps, retries=2)
        if split is None:
            return None
        split = int(split)
        pending.extend([split, m // split])
    return factors
