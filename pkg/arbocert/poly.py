"""
Univariate polynomials over Q, over Q[t] and over prime fields.

The heavy lifting (composition, subresultants, gcds, square-free
decomposition) is done by :class:`sympy.Poly`; this module fixes the
normalizations, converts coefficients to :class:`fractions.Fraction` and
adds the little-endian text format used on the command line.

Resultants and discriminants follow the classical conventions

    Res(P, Q) = a^m b^n prod_{i,j} (alpha_i - beta_j)
    disc(P)   = a^(2n-2) prod_{i<j} (alpha_i - alpha_j)^2

which are sympy's own; :func:`check_products_identity` pins them.
"""
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from tokenize import TokenError

from sympy import Poly, QQ, Rational, ZZ, gcd, lcm, symbols
from sympy.parsing.sympy_parser import (convert_xor,
                                        implicit_multiplication_application,
                                        parse_expr, standard_transformations)

from .exact import format_rat, to_rat

X, T = symbols('x t')

NEG_INFINITY = -math.inf

_LIST_PATTERN = re.compile(r'^\s*[-+0-9/]+(\s*,\s*[-+0-9/]+)*\s*$')


class ZeroPolynomialError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


def _sympy_rat(c):
    c = to_rat(c)
    return Rational(c.numerator, c.denominator)


class RatPoly:
    """Dense univariate polynomial with rational coefficients.

    Parameters
    ----------
    coeffs : list of rationals or sympy.Poly
        Little-endian coefficients (index = degree), or a sympy polynomial
        in ``x``. Trailing zeros are trimmed.
    """

    def __init__(self, coeffs):
        if isinstance(coeffs, RatPoly):
            poly = coeffs.poly
        elif isinstance(coeffs, Poly):
            if coeffs.gens != (X,):
                raise ValueError(
                    f'Expected a polynomial in x, got gens {coeffs.gens}')
            poly = coeffs.set_domain(QQ)
        else:
            big_endian = [_sympy_rat(c) for c in reversed(list(coeffs))]
            poly = Poly.from_list(big_endian or [0], X, domain=QQ)
        self.poly = poly

    @classmethod
    def x(cls):
        return cls([0, 1])

    @property
    def coeffs(self):
        if self.poly.is_zero:
            return []
        return [to_rat(c) for c in reversed(self.poly.all_coeffs())]

    @property
    def degree(self):
        if self.poly.is_zero:
            return NEG_INFINITY
        return int(self.poly.degree())

    @property
    def leading_coefficient(self):
        return to_rat(self.poly.LC())

    @property
    def is_zero(self):
        return self.poly.is_zero

    def __call__(self, x):
        x = to_rat(x)
        value = Fraction(0)
        for c in reversed(self.coeffs):
            value = value * x + c
        return value

    def derivative(self):
        return RatPoly(self.poly.diff(X))

    def compose(self, other):
        """self(other(x))."""
        return RatPoly(self.poly.compose(RatPoly(other).poly))

    def monic(self):
        if self.is_zero:
            raise ZeroPolynomialError('The zero polynomial has no monic form')
        return RatPoly(self.poly.monic())

    def __add__(self, other):
        return RatPoly(self.poly + _as_ratpoly(other).poly)

    def __sub__(self, other):
        return RatPoly(self.poly - _as_ratpoly(other).poly)

    def __mul__(self, other):
        return RatPoly(self.poly * _as_ratpoly(other).poly)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatPoly([other])
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __repr__(self):
        return f'RatPoly([{format_poly(self)}])'

    def to_string(self):
        return format_poly(self)


def _as_ratpoly(x):
    if isinstance(x, RatPoly):
        return x
    return RatPoly([x])


class TPoly:
    """Polynomial in x whose coefficients are polynomials in t over Q.

    Stored as a sympy polynomial in the generators (x, t). Resultants and
    discriminants are taken with respect to x and are polynomials in t.
    """

    def __init__(self, poly):
        if isinstance(poly, TPoly):
            poly = poly.poly
        if not isinstance(poly, Poly):
            poly = Poly(poly, X, T, domain=QQ)
        if poly.gens != (X, T):
            poly = Poly(poly.as_expr(), X, T, domain=QQ)
        self.poly = poly.set_domain(QQ)

    @classmethod
    def from_ratpoly(cls, f, t=None):
        """f(x) - t, with t the indeterminate when not given."""
        expr = RatPoly(f).poly.as_expr()
        shift = T if t is None else _sympy_rat(t)
        return cls(Poly(expr - shift, X, T, domain=QQ))

    @property
    def degree(self):
        if self.poly.is_zero:
            return NEG_INFINITY
        return int(self.poly.degree(X))

    @property
    def is_zero(self):
        return self.poly.is_zero

    @property
    def coeffs(self):
        """Little-endian list of polynomials in t."""
        if self.poly.is_zero:
            return []
        by_power = {}
        for (i, j), c in self.poly.terms():
            by_power[i] = by_power.get(i, 0) + c * T ** j
        return [Poly(by_power.get(i, 0), T, domain=QQ)
                for i in range(self.degree + 1)]

    def derivative(self):
        return TPoly(self.poly.diff(X))

    def __mul__(self, other):
        return TPoly(self.poly * _as_tpoly(other).poly)

    def __eq__(self, other):
        if not isinstance(other, TPoly):
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self):
        return hash(self.poly.as_expr())

    def __repr__(self):
        return f'TPoly({self.poly.as_expr()})'


def _as_tpoly(P):
    if isinstance(P, TPoly):
        return P
    return TPoly(Poly(RatPoly(P).poly.as_expr(), X, T, domain=QQ))


def tpolynomial(expr):
    """A polynomial in t alone, as a sympy Poly over Q."""
    if isinstance(expr, Poly) and expr.gens == (T,):
        return expr.set_domain(QQ)
    if isinstance(expr, Poly):
        expr = expr.as_expr()
    return Poly(expr, T, domain=QQ)


def _common_kind(P, Q):
    if isinstance(P, TPoly) or isinstance(Q, TPoly):
        return _as_tpoly(P), _as_tpoly(Q)
    return RatPoly(P), RatPoly(Q)


def _scaled(value, scale):
    # value / scale, for a sympy result that is a number or a Poly in t
    if isinstance(value, Poly):
        return tpolynomial(value.set_domain(QQ).quo_ground(
            _sympy_rat(scale)))
    return to_rat(value) / scale


def iterate(f, n):
    """n-fold composition of f with itself; iterate(f, 0) is x."""
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise ValueError(f'n should be a non-negative integer, got {n!r}')
    f = RatPoly(f)
    result = RatPoly.x().poly
    for _ in range(int(n)):
        result = f.poly.compose(result)
    return RatPoly(result)


def resultant(P, Q):
    """Exact resultant of P and Q with respect to x.

    Denominators are cleared first so that sympy runs its subresultant
    chain over the integers.

    Returns
    -------
    Fraction, or a sympy Poly in t when either input is a TPoly.
    """
    P, Q = _common_kind(P, Q)
    if P.is_zero or Q.is_zero:
        raise ZeroPolynomialError('resultant of the zero polynomial')
    m, n = P.degree, Q.degree
    tpoly = isinstance(P, TPoly)
    if m == 0 or n == 0:
        if m == 0:
            value = P.poly.as_expr() ** n
        else:
            value = Q.poly.as_expr() ** m
        return tpolynomial(value) if tpoly else to_rat(value)
    cp, Pz = P.poly.clear_denoms(convert=True)
    cq, Qz = Q.poly.clear_denoms(convert=True)
    cp, cq = to_rat(cp), to_rat(cq)
    value = Pz.resultant(Qz)
    return _scaled(value, cp ** n * cq ** m)


def discriminant(P):
    """Exact discriminant of P with respect to x."""
    if not isinstance(P, TPoly):
        P = RatPoly(P)
    if P.is_zero:
        raise ZeroPolynomialError('discriminant of the zero polynomial')
    n = P.degree
    if n < 1:
        raise ValueError('discriminant of a constant polynomial')
    c, Pz = P.poly.clear_denoms(convert=True)
    c = to_rat(c)
    return _scaled(Pz.discriminant(), c ** (2 * n - 2))


def is_separable(P):
    if not isinstance(P, TPoly):
        P = RatPoly(P)
    if P.degree < 1:
        return P.degree == 0
    g = gcd(P.poly, P.poly.diff(X))
    return g.degree(X) == 0


def squarefree_part(P):
    """Monic product of the irreducible factors of odd multiplicity.

    Accepts a RatPoly or a polynomial in t; returns the same kind.
    """
    if isinstance(P, RatPoly):
        poly, wrap = P.poly, RatPoly
    else:
        poly, wrap = tpolynomial(P), tpolynomial
    if poly.is_zero:
        raise ZeroPolynomialError('square-free part of the zero polynomial')
    _, factors = poly.sqf_list()
    part = Poly(1, *poly.gens, domain=QQ)
    for factor, multiplicity in factors:
        if multiplicity % 2:
            part = part * factor
    return wrap(part.monic())


def check_products_identity(P, Q):
    """Check disc(PQ) = disc(P) disc(Q) Res(P, Q)^2 exactly.

    Raises
    ------
    PreconditionError
        If P or Q is constant or PQ is not separable.
    """
    P, Q = RatPoly(P), RatPoly(Q)
    if P.degree < 1 or Q.degree < 1:
        raise PreconditionError('products identity needs deg P, deg Q >= 1')
    PQ = P * Q
    if not is_separable(PQ):
        raise PreconditionError('products identity needs PQ separable')
    return discriminant(PQ) == (discriminant(P) * discriminant(Q)
                                * resultant(P, Q) ** 2)


def eval_homogeneous(f, num, den):
    """Evaluate f at num/den without reducing fractions.

    Returns integers (a, b) with f(num/den) = a/b, and b > 0 whenever
    den > 0. Signs of huge values stay cheap to read off.
    """
    f = RatPoly(f)
    num, den = int(num), int(den)
    coeffs = f.coeffs
    if not coeffs:
        return 0, 1
    common = int(lcm([c.denominator for c in coeffs]))
    ints = [int(c * common) for c in coeffs]
    d = len(ints) - 1
    den_powers = [1]
    for _ in range(d):
        den_powers.append(den_powers[-1] * den)
    acc = ints[d]
    for i in range(d - 1, -1, -1):
        acc = acc * num + ints[i] * den_powers[d - i]
    return acc, common * den_powers[d]


def parse_poly(text):
    """Read "1,0,1" (little-endian) or a human expression like "x^2+1"."""
    if isinstance(text, (list, tuple)):
        return RatPoly(text)
    text = str(text).strip()
    if not text:
        raise ValueError('Empty polynomial')
    if _LIST_PATTERN.match(text):
        return RatPoly([to_rat(c) for c in text.split(',')])
    transformations = standard_transformations + (
        implicit_multiplication_application, convert_xor)
    try:
        expr = parse_expr(text, local_dict={'x': X},
                          transformations=transformations)
    except (SyntaxError, TokenError, TypeError) as exc:
        raise ValueError(f'Cannot parse polynomial {text!r}') from exc
    extra = expr.free_symbols - {X}
    if extra:
        raise ValueError(f'Polynomial {text!r} should only involve x, '
                         f'found {sorted(map(str, extra))}')
    return RatPoly(Poly(expr, X, domain=QQ))


def format_poly(f):
    coeffs = RatPoly(f).coeffs
    if not coeffs:
        return '0'
    return ','.join(format_rat(c) for c in coeffs)


@dataclass(frozen=True)
class FpPoly:
    """Polynomial with residues modulo a prime p, little-endian."""
    coeffs: tuple
    p: int

    def __post_init__(self):
        coeffs = [int(c) % self.p for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, 'coeffs', tuple(coeffs))

    @classmethod
    def from_ratpoly(cls, f, p):
        residues = []
        for c in RatPoly(f).coeffs:
            if c.denominator % p == 0:
                raise ValueError(f'{p} divides the denominator of {c}')
            residues.append(c.numerator * pow(c.denominator, -1, p))
        return cls(tuple(residues), p)

    @property
    def degree(self):
        if not self.coeffs:
            return NEG_INFINITY
        return len(self.coeffs) - 1

    def to_gf(self):
        """Big-endian list of residues, as sympy.polys.galoistools wants."""
        return [ZZ(c) for c in reversed(self.coeffs)]
