"""
Discriminants of f^n(x) - t, exactly or through the critical orbit.

The exact path computes disc(f^n(x) - t) with subresultants. The fast path
uses the congruence

    disc(f^n(x) - t) = eps * prod_i (f^n(lambda_i) - t)^(m_i)   (mod squares)

over the roots lambda_i of f' with multiplicities m_i. The product is the
resultant Res(f', f^n - t) / lc(f')^(d^n); only the values of f^n at the
roots of f' matter, so f^n is reduced modulo f' while it is being built
and no polynomial of degree d^n is ever formed. For even d the constant is
eps = (-1)^(N(N-1)/2) lc(f) with N = d^n, and :func:`calibrate_sign`
checks it against exact discriminants whenever those are affordable.
"""
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from joblib import Parallel, delayed
from sklearn.utils import check_random_state
from sympy import Poly, QQ, Rational, sympify

from .exact import CoprimeBasis, format_rat, is_rational_square, to_rat
from .poly import (T, TPoly, RatPoly, X, discriminant, is_separable,
                   iterate, resultant, squarefree_part, tpolynomial)
from .squareclass import (GEOMETRIC, PolyCoprimeBasis, SquareClass,
                          class_of_rational, class_of_tpolynomial)
from .utils import ArbocertWarning, LRUDict, bit_size, check_levels

EXACT = 'exact'
FAST_CALIBRATED = 'fast-calibrated'
FAST_DERIVED = 'fast-derived'
PATHS = ('exact', 'fast', 'auto')

EXACT_DEGREE_CAP = 64
VALUE_BIT_CAP = 10 ** 6

_CALIBRATIONS = LRUDict(256)


class InseparableError(ValueError):
    """f^n(x) - t has a repeated root."""

    def __init__(self, level, message=None):
        self.level = level
        super().__init__(message or f'f^n(x) - t is not separable at level '
                                    f'{level}')


class CalibrationError(RuntimeError):
    pass


def _check_poly(f):
    f = RatPoly(f)
    if f.degree < 2:
        raise ValueError(f'f should have degree >= 2, got {f.to_string()}')
    return f


def _rational(c):
    c = to_rat(c)
    return Rational(c.numerator, c.denominator)


def disc_exact(f, t, n):
    """disc(f^n(x) - t); a polynomial in t when t is None.

    Raises
    ------
    InseparableError
        If f^n(x) - t has a repeated root.
    """
    f = _check_poly(f)
    n = check_levels(n, name='n')
    F = iterate(f, n)
    if t is None:
        P = TPoly.from_ratpoly(F)
    else:
        P = F - RatPoly([t])
    if not is_separable(P):
        raise InseparableError(n)
    return discriminant(P)


@dataclass
class CriticalOrbitProduct:
    """prod over the roots lambda of f' of (f^n(lambda) - t), with
    multiplicity. ``value`` is a Fraction, or a Poly in t when t is None."""
    level: int
    value: object
    t: object = None

    @property
    def is_zero(self):
        if isinstance(self.value, Poly):
            return self.value.is_zero
        return self.value == 0


def _orbit_remainders(coeffs, fp, n):
    # h_j = f^j(x) mod f', by Horner evaluation of f at h_{j-1}
    domain = fp.get_domain()
    h = Poly(X, X, domain=domain).rem(fp)
    for _ in range(n):
        acc = Poly(coeffs[-1], X, domain=domain)
        for c in reversed(coeffs[:-1]):
            acc = (acc * h).add_ground(c).rem(fp)
        h = acc
        yield h


def _product_from_remainder(fp, R, t):
    lc = to_rat(fp.LC())
    if t is None:
        if R.degree() <= 0:
            c = _rational(R.as_expr())
            return tpolynomial((c - T) ** fp.degree())
        value = resultant(RatPoly(fp), TPoly(Poly(R.as_expr() - T, X, T,
                                                  domain=QQ)))
        scale = lc ** R.degree()
        return tpolynomial(value.as_expr() / _rational(scale))
    G = R - Poly(_rational(t), X, domain=R.domain)
    if G.is_zero:
        return Fraction(0)
    if G.degree() == 0:
        return to_rat(G.LC()) ** fp.degree()
    return resultant(RatPoly(fp), RatPoly(G)) / lc ** G.degree()


def critical_orbit_products(f, t, levels):
    """Critical orbit products for n = 1..levels, as a list."""
    f = _check_poly(f)
    levels = check_levels(levels, minimum=0)
    fp = f.derivative().poly
    coeffs = [_rational(c) for c in f.coeffs]
    if t is not None:
        t = to_rat(t)
    return [CriticalOrbitProduct(level=j + 1,
                                 value=_product_from_remainder(fp, R, t),
                                 t=t)
            for j, R in enumerate(_orbit_remainders(coeffs, fp, levels))]


def critical_orbit_product(f, t, n):
    """Res(f', f^n - t) / lc(f')^(d^n), computed without root finding.

    Examples
    --------
    >>> critical_orbit_product([1, 0, 1], 0, 3).value
    Fraction(5, 1)
    """
    n = check_levels(n, name='n')
    return critical_orbit_products(f, t, n)[-1]


def _residue(c, r):
    c = to_rat(c)
    if c.denominator % r == 0:
        raise ValueError(f'{r} divides the denominator of {format_rat(c)}')
    return c.numerator * pow(c.denominator, -1, r) % r


def critical_orbit_residues(f, t, levels, r):
    """Critical orbit products for n = 1..levels, reduced modulo r.

    The same modular composition as :func:`critical_orbit_products`, over
    the field with r elements; the values are never formed over Q.

    Parameters
    ----------
    r : int
        An odd prime dividing no denominator of f or t nor lc(f').
    """
    f = _check_poly(f)
    levels = check_levels(levels, minimum=0)
    fp_q = f.derivative()
    lc = _residue(fp_q.leading_coefficient, r)
    if lc == 0:
        raise ValueError(f'{r} divides the leading coefficient of f\'')
    fp = Poly.from_list([_residue(c, r) for c in reversed(fp_q.coeffs)], X,
                        modulus=r)
    coeffs = [_residue(c, r) for c in f.coeffs]
    t_r = _residue(t, r)
    residues = []
    for R in _orbit_remainders(coeffs, fp, levels):
        G = R - Poly(t_r, X, modulus=r)
        if G.is_zero:
            residues.append(0)
        elif G.degree() == 0:
            residues.append(pow(int(G.LC()) % r, fp.degree(), r))
        else:
            res = int(fp.resultant(G)) % r
            scale = pow(lc, G.degree(), r)
            residues.append(res * pow(scale, -1, r) % r)
    return residues


def predicted_calibration(f, n):
    """Derived constant eps with disc(f^n - t) = eps * product mod squares.

    Only valid for even degree: eps = (-1)^(N(N-1)/2) * lc(f), N = d^n.
    """
    f = _check_poly(f)
    n = check_levels(n, name='n')
    d = f.degree
    if d % 2:
        raise ValueError(f'The derived calibration needs an even degree, '
                         f'got {d}')
    N = d ** n
    sign = -1 if (N * (N - 1) // 2) % 2 else 1
    return sign * f.leading_coefficient


@dataclass(frozen=True)
class Calibration:
    """Square class of disc / critical orbit product at one (d, n, lc).

    ``verified`` is True when the constant was compared with exact
    discriminants at sampled t; False when only the derived constant is
    available.
    """
    degree: int
    level: int
    leading_coefficient: Fraction
    constant: Fraction
    verified: bool
    n_samples: int = 0

    @property
    def path(self):
        return FAST_CALIBRATED if self.verified else FAST_DERIVED

    @property
    def square_class(self):
        return class_of_rational(self.constant)

    def to_dict(self):
        return {'degree': self.degree, 'level': self.level,
                'leadingCoefficient': format_rat(self.leading_coefficient),
                'constant': format_rat(self.constant),
                'verified': self.verified, 'samples': self.n_samples}

    @classmethod
    def from_dict(cls, data):
        return cls(degree=data['degree'], level=data['level'],
                   leading_coefficient=to_rat(data['leadingCoefficient']),
                   constant=to_rat(data['constant']),
                   verified=data['verified'], n_samples=data['samples'])


def _sample_t(rng):
    return Fraction(int(rng.randint(-30, 31)), int(rng.randint(1, 6)))


def calibrate_sign(f, n, n_samples=10, random_state=0,
                   exact_degree_cap=EXACT_DEGREE_CAP):
    """Calibrate the fast path against exact discriminants.

    The ratio disc_exact / critical_orbit_product is computed at
    ``n_samples`` random rational t; all ratios have to be in one square
    class, which for even d has to be the derived constant. Results are
    cached by (deg f, n, lc(f)).

    Raises
    ------
    CalibrationError
        If the ratio class varies with t, disagrees with the derived
        constant, or cannot be computed.
    """
    f = _check_poly(f)
    n = check_levels(n, name='n')
    d = f.degree
    key = (d, n, f.leading_coefficient, d ** n <= exact_degree_cap)
    cached = _CALIBRATIONS[key]
    if cached is not None:
        return cached
    if n_samples < 1:
        raise ValueError(f'n_samples should be >= 1, got {n_samples}')

    if d ** n > exact_degree_cap:
        if d % 2:
            raise CalibrationError(
                f'Degree {d ** n} exceeds the exact cap {exact_degree_cap} '
                f'and no derived constant exists for odd degree')
        warnings.warn(f'Level {n} has degree {d ** n} > {exact_degree_cap}:'
                      f' using the derived calibration constant',
                      ArbocertWarning)
        calibration = Calibration(d, n, f.leading_coefficient,
                                  predicted_calibration(f, n),
                                  verified=False)
        _CALIBRATIONS[key] = calibration
        return calibration

    rng = check_random_state(random_state)
    ratios = []
    for _ in range(50 * n_samples):
        if len(ratios) == n_samples:
            break
        t = _sample_t(rng)
        products = critical_orbit_products(f, t, n)
        if any(P.is_zero for P in products):
            continue
        ratios.append(disc_exact(f, t, n) / products[-1].value)
    else:
        if len(ratios) < n_samples:
            raise CalibrationError(f'Could not find {n_samples} separable '
                                   f'sample points at level {n}')

    reference = ratios[0]
    for ratio in ratios[1:]:
        if not is_rational_square(ratio / reference):
            raise CalibrationError(
                f'The ratio class depends on t at level {n}: '
                f'{format_rat(reference)} vs {format_rat(ratio)}')
    constant = reference
    if d % 2 == 0:
        constant = predicted_calibration(f, n)
        if not is_rational_square(reference / constant):
            raise CalibrationError(
                f'Calibration at level {n} is {format_rat(reference)}, '
                f'expected the class of {format_rat(constant)}')
    calibration = Calibration(d, n, f.leading_coefficient, constant,
                              verified=True, n_samples=len(ratios))
    _CALIBRATIONS[key] = calibration
    return calibration


def estimated_value_bits(f, t, n):
    """Rough size of the level-n discriminant class representative."""
    f = RatPoly(f)
    height = max(bit_size(c) for c in f.coeffs)
    if t is not None:
        height = max(height, bit_size(t))
    return (f.degree - 1) * f.degree ** n * (height + 1)


@dataclass
class DiscEntry:
    """One level of a discriminant sequence.

    ``value`` and ``square_class`` are None when the value is beyond the
    bit cap; callers then fall back to quadratic characters.
    """
    level: int
    value: object = None
    square_class: SquareClass = None
    path: str = EXACT
    bits: int = 0

    def to_dict(self, value_bit_cap=VALUE_BIT_CAP):
        if self.value is None or self.bits > value_bit_cap:
            value = None
        elif isinstance(self.value, Poly):
            value = str(self.value.as_expr())
        else:
            value = format_rat(self.value)
        return {'level': self.level, 'value': value, 'path': self.path,
                'bits': self.bits,
                'class': None if self.square_class is None
                else self.square_class.to_dict()}

    @classmethod
    def from_dict(cls, data):
        value = data.get('value')
        if value is not None:
            value = to_rat(value) if 't' not in value \
                else tpolynomial(_parse_t(value))
        square_class = data.get('class')
        if square_class is not None:
            square_class = SquareClass.from_dict(square_class)
        return cls(level=data['level'], value=value,
                   square_class=square_class, path=data['path'],
                   bits=data.get('bits', 0))


def _parse_t(text):
    return sympify(text, locals={'t': T})


@dataclass
class DiscSequence:
    entries: list = field(default_factory=list)
    t: object = None

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def classes(self):
        return [e.square_class for e in self.entries]

    @property
    def values(self):
        return [e.value for e in self.entries]

    def to_dict(self, value_bit_cap=VALUE_BIT_CAP):
        return [e.to_dict(value_bit_cap) for e in self.entries]

    @classmethod
    def from_dict(cls, data, t=None):
        return cls(entries=[DiscEntry.from_dict(e) for e in data], t=t)


def _value_bits(value):
    if isinstance(value, Poly):
        return sum(bit_size(to_rat(c)) for c in value.all_coeffs())
    return bit_size(value)


def disc_sequence(f, t, levels, path='auto', mode=GEOMETRIC,
                  exact_degree_cap=EXACT_DEGREE_CAP,
                  value_bit_cap=VALUE_BIT_CAP, n_jobs=None, random_state=0):
    """Square classes of disc(f^n(x) - t) for n = 1..levels.

    Parameters
    ----------
    f : RatPoly
    t : rational or None
        None for the indeterminate t.
    levels : int
    path : {'exact', 'fast', 'auto'}
        'exact' always takes subresultants; 'fast' always uses the
        calibrated critical orbit product; 'auto' is exact while
        d^n <= exact_degree_cap.
    mode : {'geometric', 'arithmetic'}
        Class convention for polynomial values.
    value_bit_cap : int
        Fast-path values estimated larger than this are not formed; their
        entries carry no value and no class.
    n_jobs : int, optional
        Exact levels are computed in parallel with joblib.

    Raises
    ------
    InseparableError
        At the first level where f^n(x) - t has a repeated root.
    """
    f = _check_poly(f)
    levels = check_levels(levels, minimum=0)
    if path not in PATHS:
        raise ValueError(f"path should be one of {PATHS}, got {path!r}")
    if t is not None:
        t = to_rat(t)
    d = f.degree
    if path == 'exact':
        exact_levels = list(range(1, levels + 1))
    elif path == 'fast':
        exact_levels = []
    else:
        exact_levels = [n for n in range(1, levels + 1)
                        if d ** n <= exact_degree_cap]
    fast_levels = [n for n in range(1, levels + 1) if n not in exact_levels]
    small = [n for n in fast_levels
             if estimated_value_bits(f, t, n) <= value_bit_cap]

    values = {}
    paths = {}
    if small:
        products = critical_orbit_products(f, t, max(small))
        for P in products:
            if P.is_zero:
                raise InseparableError(P.level)
        for n in small:
            calibration = calibrate_sign(f, n,
                                         exact_degree_cap=exact_degree_cap,
                                         random_state=random_state)
            value = products[n - 1].value
            if isinstance(value, Poly):
                value = tpolynomial(value.as_expr()
                                    * _rational(calibration.constant))
            else:
                value = calibration.constant * value
            values[n] = value
            paths[n] = calibration.path
    if exact_levels:
        exact_values = Parallel(n_jobs=n_jobs)(
            delayed(disc_exact)(f, t, n) for n in exact_levels)
        values.update(zip(exact_levels, exact_values))
        paths.update((n, EXACT) for n in exact_levels)

    rational_basis = CoprimeBasis()
    poly_basis = PolyCoprimeBasis()
    entries = []
    for n in range(1, levels + 1):
        if n not in values:
            entries.append(DiscEntry(level=n, path=FAST_DERIVED
                                     if d ** n > exact_degree_cap
                                     else FAST_CALIBRATED,
                                     bits=estimated_value_bits(f, t, n)))
            continue
        value = values[n]
        if isinstance(value, Poly):
            square_class = class_of_tpolynomial(value, mode, poly_basis,
                                                rational_basis)
        else:
            square_class = class_of_rational(value, rational_basis)
        entries.append(DiscEntry(level=n, value=value,
                                 square_class=square_class, path=paths[n],
                                 bits=_value_bits(value)))
    return DiscSequence(entries=entries, t=t)


@dataclass
class DiscPoly:
    """D_n(t) = disc(f^n(x) - t), or its calibrated stand-in, with the
    monic square-free part."""
    level: int
    value: Poly
    squarefree: Poly
    path: str = EXACT

    def to_dict(self):
        return {'level': self.level, 'path': self.path,
                'value': str(self.value.as_expr()),
                'squarefree': str(self.squarefree.as_expr())}


def disc_poly_sequence(f, levels, exact_degree_cap=16):
    """D_n(t) and its square-free part for n = 1..levels.

    Above ``exact_degree_cap`` the exact bivariate discriminant is replaced
    by eps * prod (f^n(lambda_i) - t)^(m_i), which has the same square
    class in Q(t) and so the same square-free part.

    Examples
    --------
    >>> [str(D.squarefree.as_expr()) for D in disc_poly_sequence([1, 0, 1], 2)]
    ['t - 1', 't - 2']
    """
    f = _check_poly(f)
    levels = check_levels(levels, minimum=0)
    d = f.degree
    out = []
    products = None
    for n in range(1, levels + 1):
        if d ** n <= exact_degree_cap:
            value, path = disc_exact(f, None, n), EXACT
        else:
            if products is None:
                products = critical_orbit_products(f, None, levels)
            product = products[n - 1].value
            if product.is_zero:
                raise InseparableError(n)
            if d % 2:
                constant = calibrate_sign(f, n).constant
            else:
                constant = predicted_calibration(f, n)
            value = tpolynomial(product.as_expr() * _rational(constant))
            path = FAST_DERIVED
        out.append(DiscPoly(level=n, value=value,
                            squarefree=squarefree_part(value), path=path))
    return out
