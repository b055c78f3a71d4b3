"""
Square classes: the F2 vector space K^x / K^x2 for K = Q and K = Q(t).

A rational class is a sign bit plus the set of coprime-basis elements that
appear to an odd power. A class over Q(t) is the set of polynomial
coprime-basis elements dividing the monic square-free part; in arithmetic
mode it also carries the rational class of the leading coefficient.

When values are too large to refine, classes are replaced by their images
under quadratic characters (the sign and Legendre symbols at auxiliary
primes). Characters are homomorphisms, so independent images imply
independent classes; dependent images decide nothing.
"""
from dataclasses import dataclass, field

from sympy import Poly, QQ, gcd, legendre_symbol, sympify

from .exact import CoprimeBasis, NotCoveredError, to_rat
from .poly import T, ZeroPolynomialError, squarefree_part, tpolynomial

GEOMETRIC = 'geometric'
ARITHMETIC = 'arithmetic'


@dataclass(frozen=True)
class SquareClass:
    """Element of K^x / K^x2.

    Attributes
    ----------
    sign : int
        1 for a negative representative.
    parities : frozenset of int
        Coprime-basis elements with odd exponent.
    poly_parities : frozenset of sympy.Poly
        Monic polynomial basis elements (in t) with odd exponent.
    value : rational or Poly, optional
        The represented element, kept to re-express the class over a finer
        basis. Not part of equality, so two classes compare equal only when
        they were built over the same basis; ``common_basis`` realigns
        classes that carry a value.
    """
    sign: int = 0
    parities: frozenset = frozenset()
    poly_parities: frozenset = frozenset()
    value: object = field(default=None, compare=False, repr=False)

    @property
    def is_trivial(self):
        return not (self.sign or self.parities or self.poly_parities)

    def __mul__(self, other):
        return SquareClass(sign=self.sign ^ other.sign,
                           parities=self.parities ^ other.parities,
                           poly_parities=self.poly_parities
                           ^ other.poly_parities,
                           value=_product_value(self.value, other.value))

    def to_dict(self):
        return {
            'sign': self.sign,
            'basis': [[str(b), 1] for b in sorted(self.parities)],
            'polys': sorted(str(P.as_expr()) for P in self.poly_parities),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            sign=int(data['sign']),
            parities=frozenset(int(b) for b, parity in data['basis']
                               if parity % 2),
            poly_parities=frozenset(tpolynomial(sympify(s))
                                    for s in data.get('polys', [])))


def _product_value(a, b):
    if a is None or b is None:
        return None
    if isinstance(a, Poly) and isinstance(b, Poly):
        return a * b
    if isinstance(a, Poly) or isinstance(b, Poly):
        return None
    return to_rat(a) * to_rat(b)


class PolyCoprimeBasis:
    """Pairwise coprime monic square-free polynomials in t."""

    def __init__(self, inputs=()):
        self._elements = []
        self.refine(inputs)

    @property
    def elements(self):
        return tuple(sorted(self._elements, key=lambda P: str(P.as_expr())))

    def __len__(self):
        return len(self._elements)

    def refine(self, polys):
        for P in polys:
            self._insert(squarefree_part(tpolynomial(P)))
        return self

    def _insert(self, s):
        work = [s]
        while work:
            m = work.pop()
            if m.degree() <= 0:
                continue
            for i, b in enumerate(self._elements):
                g = gcd(m, b)
                if g.degree() > 0:
                    del self._elements[i]
                    work.extend([g.monic(), b.exquo(g).monic(),
                                 m.exquo(g).monic()])
                    break
            else:
                self._elements.append(m.monic())

    def support(self, P):
        """Basis elements dividing the square-free part of P."""
        s = squarefree_part(tpolynomial(P))
        support = [b for b in self._elements if s.rem(b).is_zero]
        product = Poly(1, T, domain=QQ)
        for b in support:
            product = product * b
        if product != s:
            raise NotCoveredError(
                f'{s.as_expr()} is not a product of basis elements')
        return frozenset(support)


def class_of_rational(x, basis=None):
    """Square class of a nonzero rational.

    Parameters
    ----------
    x : rational
    basis : CoprimeBasis, optional
        Refined in place when it does not cover x.
    """
    x = to_rat(x)
    if x == 0:
        raise ValueError('0 has no square class')
    if basis is None:
        basis = CoprimeBasis()
    num, den = abs(x.numerator), x.denominator
    if not (basis.covers(num) and basis.covers(den)):
        basis.refine([num, den])
    parities = set()
    for part in (num, den):
        for b, e in basis.exponents(part).items():
            if e % 2:
                parities ^= {b}
    return SquareClass(sign=int(x < 0), parities=frozenset(parities),
                       value=x)


def class_of_tpolynomial(P, mode=GEOMETRIC, basis=None,
                         rational_basis=None):
    """Square class of a nonzero polynomial in t.

    Geometric mode drops constants, which are squares over an algebraically
    closed constant field. Arithmetic mode writes P = lc(P) * monic(P) and
    adds the rational class of lc(P).
    """
    if mode not in (GEOMETRIC, ARITHMETIC):
        raise ValueError(f"mode should be '{GEOMETRIC}' or '{ARITHMETIC}', "
                         f"got {mode!r}")
    P = tpolynomial(P)
    if P.is_zero:
        raise ZeroPolynomialError('zero polynomial has no square class')
    if basis is None:
        basis = PolyCoprimeBasis()
    try:
        support = basis.support(P)
    except NotCoveredError:
        basis.refine([P])
        support = basis.support(P)
    if mode == GEOMETRIC:
        return SquareClass(poly_parities=support, value=P)
    constant = class_of_rational(to_rat(P.LC()), rational_basis)
    return SquareClass(sign=constant.sign, parities=constant.parities,
                       poly_parities=support, value=P)


def common_basis(classes):
    """Re-express classes that carry their value over one shared basis."""
    rational_values = [c.value for c in classes
                       if c.value is not None and not isinstance(c.value,
                                                                 Poly)]
    poly_values = [c.value for c in classes if isinstance(c.value, Poly)]
    # arithmetic classes of polynomials carry the class of lc(P)
    rational_values += [c.value.LC() for c in classes
                        if isinstance(c.value, Poly)
                        and (c.sign or c.parities)]
    basis = CoprimeBasis()
    for x in rational_values:
        x = to_rat(x)
        basis.refine([x.numerator, x.denominator])
    poly_basis = PolyCoprimeBasis(poly_values)
    aligned = []
    for c in classes:
        if c.value is None:
            aligned.append(c)
        elif isinstance(c.value, Poly):
            support = poly_basis.support(c.value)
            if c.sign or c.parities:
                constant = class_of_rational(to_rat(c.value.LC()), basis)
                aligned.append(SquareClass(
                    sign=constant.sign, parities=constant.parities,
                    poly_parities=support, value=c.value))
            else:
                aligned.append(SquareClass(poly_parities=support,
                                           value=c.value))
        else:
            aligned.append(class_of_rational(c.value, basis))
    return aligned


def _coordinates(classes):
    index = {}
    vectors = []
    for c in classes:
        keys = [('sign',)] if c.sign else []
        keys += [('int', b) for b in c.parities]
        keys += [('poly', str(P.as_expr())) for P in c.poly_parities]
        v = 0
        for key in keys:
            if key not in index:
                index[key] = len(index)
            v |= 1 << index[key]
        vectors.append(v)
    return vectors


class _F2Reducer:
    # Incremental Gaussian elimination over F2 on int bitmasks, tracking
    # which inputs were combined into each pivot row.

    def __init__(self):
        self.pivots = {}

    def reduce(self, v, combo):
        while v:
            top = v.bit_length() - 1
            if top not in self.pivots:
                return v, combo
            pv, pc = self.pivots[top]
            v ^= pv
            combo ^= pc
        return 0, combo

    def add(self, v, combo):
        v, combo = self.reduce(v, combo)
        if v:
            self.pivots[v.bit_length() - 1] = (v, combo)
        return v, combo


def _mask_to_indices(mask):
    indices = []
    i = 0
    while mask:
        if mask & 1:
            indices.append(i)
        mask >>= 1
        i += 1
    return indices


@dataclass
class IndependenceResult:
    independent: bool
    witness: tuple = None

    def to_dict(self):
        return {'independent': self.independent,
                'witness': None if self.witness is None
                else list(self.witness)}


@dataclass
class SpanResult:
    in_span: bool
    subset: tuple = None

    def to_dict(self):
        return {'inSpan': self.in_span,
                'subset': None if self.subset is None else list(self.subset)}


def independent(classes):
    """F2-independence of square classes.

    Returns
    -------
    IndependenceResult
        On dependence, ``witness`` is a 0/1 vector whose selected classes
        multiply to the trivial class.
    """
    classes = common_basis(list(classes))
    return _independent_vectors(_coordinates(classes))


def _independent_vectors(vectors):
    reducer = _F2Reducer()
    for i, v in enumerate(vectors):
        rest, combo = reducer.add(v, 1 << i)
        if not rest:
            indices = set(_mask_to_indices(combo))
            return IndependenceResult(
                independent=False,
                witness=tuple(int(j in indices)
                              for j in range(len(vectors))))
    return IndependenceResult(independent=True)


def in_span(target, generators):
    """Whether target is a product of some generators.

    Returns
    -------
    SpanResult
        ``subset`` lists generator indices whose product is the target.
    """
    classes = common_basis([target] + list(generators))
    return _in_span_vectors(_coordinates(classes))


def _in_span_vectors(vectors):
    target, generators = vectors[0], vectors[1:]
    reducer = _F2Reducer()
    for i, v in enumerate(generators):
        reducer.add(v, 1 << i)
    rest, combo = reducer.reduce(target, 0)
    if rest:
        return SpanResult(in_span=False)
    return SpanResult(in_span=True, subset=tuple(_mask_to_indices(combo)))


@dataclass(frozen=True)
class CharacterVector:
    """Images of a square class under quadratic characters.

    Attributes
    ----------
    primes : tuple of int
        Odd primes r at which the class is an r-unit.
    bits : tuple of int
        1 where the Legendre symbol at r is -1.
    sign : int or None
        Sign bit, when the sign of the value is known.
    """
    primes: tuple
    bits: tuple
    sign: int = None

    def to_dict(self):
        return {'primes': list(self.primes), 'bits': list(self.bits),
                'sign': self.sign}

    @classmethod
    def from_dict(cls, data):
        return cls(primes=tuple(data['primes']), bits=tuple(data['bits']),
                   sign=data.get('sign'))


def character_vector(residues, sign=None):
    """Characters of a value given by its nonzero residues.

    Parameters
    ----------
    residues : dict
        odd prime r -> value mod r (nonzero).
    sign : int, optional
        1 if the value is negative.
    """
    primes = tuple(sorted(residues))
    bits = []
    for r in primes:
        symbol = legendre_symbol(int(residues[r]) % r, r)
        if symbol == 0:
            raise ValueError(f'value vanishes mod {r}')
        bits.append(int(symbol == -1))
    return CharacterVector(primes=primes, bits=tuple(bits), sign=sign)


def _character_masks(vectors):
    primes = vectors[0].primes if vectors else ()
    if any(v.primes != primes for v in vectors):
        raise ValueError('Character vectors use different primes')
    use_sign = all(v.sign is not None for v in vectors)
    masks = []
    for v in vectors:
        mask = 0
        for i, bit in enumerate(v.bits):
            mask |= bit << i
        if use_sign:
            mask |= v.sign << len(primes)
        masks.append(mask)
    return masks


def independent_by_characters(vectors):
    """True when the character images are independent, else None.

    None means undetermined: dependent images do not imply dependent
    classes.
    """
    if not vectors:
        return True
    result = _independent_vectors(_character_masks(list(vectors)))
    return True if result.independent else None


def outside_span_by_characters(target, generators):
    """True when target's image is outside the span of the generators'."""
    masks = _character_masks([target] + list(generators))
    result = _in_span_vectors(masks)
    return True if not result.in_span else None
