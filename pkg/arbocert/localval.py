"""
Newton polygons, Eisenstein tests and the two-prime local certificate.

For a polynomial f of even degree d, a prime p with d/2 < p < d - 2 and a
prime q != p, if f is Eisenstein at q and the Newton polygon of f at p is
made of the two segments (0, 2)-(p, 0) and (p, 0)-(d, 0), then for every
n and every root alpha of f^n(x) the splitting field of f(x) - alpha over
Q(alpha) has Galois group A_d or S_d. The certificate below only checks
these valuation-theoretic hypotheses; it never builds a splitting field.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import primerange

from .exact import FactorizationError, factor_bounded, val_p
from .poly import RatPoly, ZeroPolynomialError

BIG_LOCAL_JUSTIFICATION = (
    'Eisenstein at q keeps every f(x) - alpha irreducible over Q(alpha); '
    'the segment (0,2)-(p,0) survives in every f(x) - alpha and forces '
    'wild ramification, hence a p-cycle with p > d/2 in a primitive group; '
    'a primitive group containing a cycle that fixes at least three points '
    'is A_d or S_d.')


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of the points (i, v_p(a_i)).

    Attributes
    ----------
    vertices : tuple of (int, int)
        Hull vertices, strictly increasing in i, collinear points dropped.
    """
    vertices: tuple

    @property
    def slopes(self):
        """List of (slope, horizontal length) from left to right."""
        segments = []
        for (i0, v0), (i1, v1) in zip(self.vertices, self.vertices[1:]):
            segments.append((Fraction(v1 - v0, i1 - i0), i1 - i0))
        return segments

    def slope_multiset(self):
        """slope -> total horizontal length."""
        lengths = {}
        for slope, length in self.slopes:
            lengths[slope] = lengths.get(slope, 0) + length
        return lengths


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(f, p):
    """Newton polygon of f at the prime p.

    Valuations are the usual p-adic ones on Q, which already take all
    integer values.
    """
    f = RatPoly(f)
    if f.is_zero:
        raise ZeroPolynomialError('Newton polygon of the zero polynomial')
    points = [(i, val_p(c, p)) for i, c in enumerate(f.coeffs) if c != 0]
    hull = []
    for point in points:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], point) <= 0:
            hull.pop()
        hull.append(point)
    return NewtonPolygon(tuple(hull))


def is_eisenstein(f, q):
    """True iff f is Eisenstein at the prime q."""
    f = RatPoly(f)
    if f.degree < 2:
        return False
    coeffs = f.coeffs
    if val_p(coeffs[-1], q) != 0:
        return False
    if val_p(coeffs[0], q) != 1:
        return False
    return all(val_p(c, q) >= 1 for c in coeffs[1:-1])


@dataclass
class BigLocalCertificate:
    """Outcome of :func:`big_local_certificate`.

    ``accepted`` is True only if the window, Eisenstein and polygon checks
    all hold; otherwise ``failed_check`` names the first one that failed.
    """
    p: int
    q: int
    degree: int
    accepted: bool
    checks: dict = field(default_factory=dict)
    failed_check: str = None
    reason: str = None
    polygon: tuple = ()

    @property
    def fixed_points(self):
        # points fixed by the p-cycle the wild inertia provides
        return self.degree - self.p

    def to_dict(self):
        out = {
            'p': self.p,
            'q': self.q,
            'degree': self.degree,
            'accepted': self.accepted,
            'checks': dict(self.checks),
            'polygon': [list(v) for v in self.polygon],
            'cycleFixedPoints': self.fixed_points,
            'jordanThreeFixedPoints': self.fixed_points >= 3,
        }
        if self.accepted:
            out['justification'] = BIG_LOCAL_JUSTIFICATION
            out['validForAllLevels'] = True
        else:
            out['failedCheck'] = self.failed_check
            out['reason'] = self.reason
        return out

    @classmethod
    def from_dict(cls, data):
        return cls(p=data['p'], q=data['q'], degree=data['degree'],
                   accepted=data['accepted'], checks=dict(data['checks']),
                   failed_check=data.get('failedCheck'),
                   reason=data.get('reason'),
                   polygon=tuple(tuple(v) for v in data['polygon']))


def big_local_certificate(f, p, q):
    """Check the two-prime local hypotheses for f at (p, q).

    Parameters
    ----------
    f : RatPoly
        Polynomial of even degree d, the tree being rooted at 0.
    p, q : int
        Distinct primes; p carries the two-segment polygon, q the
        Eisenstein condition.

    Returns
    -------
    BigLocalCertificate
        With ``accepted`` False and ``failed_check`` in {'a', 'b', 'c'}
        for the window, Eisenstein and polygon checks respectively.
    """
    f = RatPoly(f)
    d = f.degree
    if d < 2 or d % 2:
        raise ValueError(f'big_local_certificate needs an even degree, '
                         f'got {d}')
    if p == q:
        raise ValueError(f'p and q should be distinct, both are {p}')
    cert = BigLocalCertificate(p=p, q=q, degree=d, accepted=False)

    cert.checks['window'] = 2 * p > d and p < d - 2
    if not cert.checks['window']:
        cert.failed_check = 'a'
        cert.reason = f'window d/2 < p < d - 2 fails for d={d}, p={p}'
        return cert

    cert.checks['eisenstein'] = is_eisenstein(f, q)
    if not cert.checks['eisenstein']:
        cert.failed_check = 'b'
        cert.reason = f'f is not Eisenstein at q={q}'
        return cert

    polygon = newton_polygon(f, p)
    cert.polygon = polygon.vertices
    expected = ((0, 2), (p, 0), (d, 0))
    cert.checks['polygon'] = polygon.vertices == expected
    if not cert.checks['polygon']:
        cert.failed_check = 'c'
        cert.reason = (f'Newton polygon at p={p} is {list(polygon.vertices)}'
                       f', expected {list(expected)}')
        return cert

    cert.accepted = True
    return cert


def find_local_primes(f, trial_bound=10 ** 6, max_rho_steps=10 ** 5):
    """Search for primes (p, q) that make :func:`big_local_certificate`
    accept f.

    q must divide the numerator of every non-leading coefficient, so the
    candidates are the prime factors of their gcd, found with
    :func:`~arbocert.exact.factor_bounded`. p runs over the window
    d/2 < p < d - 2.

    Returns
    -------
    tuple of int or None
        The first accepted (p, q), smallest q first; None when no pair
        passes.

    Raises
    ------
    FactorizationError
        When the gcd has a composite cofactor the bounded factorizer
        cannot split; no verdict is drawn from a partial factorization.
    """
    f = RatPoly(f)
    d = f.degree
    if d < 2 or d % 2:
        raise ValueError(f'find_local_primes needs an even degree, got {d}')
    lower = f.coeffs[:-1]
    if lower[0] == 0:
        return None
    g = math.gcd(*(c.numerator for c in lower))
    factors = factor_bounded(g, trial_bound=trial_bound,
                             max_rho_steps=max_rho_steps)
    if factors is None:
        raise FactorizationError(
            f'could not split the gcd {g} of the lower coefficients '
            f'({g.bit_length()} bits)')
    window = list(primerange(d // 2 + 1, d - 2))
    for q in sorted(factors):
        for p in window:
            if p != q and big_local_certificate(f, p, q).accepted:
                return p, q
    return None


def translate_root(f, t):
    """g(x) = f(x + t) - t, whose preimage tree of 0 is that of t under f.

    g^n(x) = f^n(x + t) - t, so local checks on g apply to the tree of t.
    """
    f = RatPoly(f)
    shift = RatPoly([t, 1])
    return f.compose(shift) - RatPoly([t])
