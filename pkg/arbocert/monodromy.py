"""
Iterated monodromy groups over Q(t).

Take t an indeterminate and f in Q[x] of even degree d. Write Gamma'_n for
the roots of odd multiplicity of D_n(t) = disc(f^n(x) - t). These are the
level-n critical values f^n(lambda) whose classes are non-squares over an
algebraically closed constant field. Assume f(x) - t has Galois group A_d
or S_d. Then the arboreal representation is surjective through level N as
soon as each Gamma'_n has a root outside the earlier ones. The roots are
never computed: the square-free parts of D_n are compared over a coprime
basis of Q[t].
"""
from dataclasses import dataclass, field

from sklearn.base import BaseEstimator
from sympy import Poly, gcd

from .certify import (CRITERION_FAILED_AT_LEVEL, INVALID_INPUT,
                      SURJECTIVE_THROUGH_LEVEL, UNKNOWN, exit_code)
from .discseq import disc_poly_sequence
from .exact import format_rat, to_rat
from .poly import RatPoly, TPoly, discriminant, squarefree_part
from .squareclass import ARITHMETIC, PolyCoprimeBasis, class_of_tpolynomial
from .utils import check_levels

MORSE = 'morse'
ASSUMED = 'assumed'
HYPOTHESES = (MORSE, ASSUMED)

MORSE_VERIFIED = 'morse-verified'

PCF_DETECTED = 'pcf-detected'
INFINITE_ORBIT = 'infinite-orbit-detected'
UNDETERMINED = 'undetermined-at-cap'

PATHS = {'auto': 8, 'exact': float('inf'), 'fast': 1}


def _check_poly(f):
    f = RatPoly(f)
    if f.degree < 2:
        raise ValueError(f'f should have degree >= 2, got {f.to_string()}')
    return f


def morse_check(f):
    """Sufficient test for monodromy group S_d of f(x) - t.

    True when f' is square-free and the d - 1 critical values are distinct,
    i.e. disc_x(f(x) - t) has d - 1 distinct roots in t. The monodromy is
    then generated by transpositions and transitive.
    """
    f = _check_poly(f)
    f1 = f.derivative().poly
    if gcd(f1, f1.diff()).degree() > 0:
        return False
    D = discriminant(TPoly.from_ratpoly(f))
    return squarefree_part(D).degree() == f.degree - 1


def _height(P):
    # max coefficient size of the primitive integer multiple
    _, Pz = P.clear_denoms(convert=True)
    return max(abs(int(c)).bit_length() for c in Pz.primitive()[1].coeffs())


def _key(P):
    return str(P.as_expr())


def _supports(basis, squarefree):
    return [basis.support(s) for s in squarefree]


@dataclass
class PCFResult:
    """Verdict of the post-critical finiteness detector.

    ``fresh`` lists, per level, the basis factors new at that level;
    ``heights`` the maximal coefficient size of the square-free part.
    """
    verdict: str
    level: int
    fresh: list = field(default_factory=list)
    heights: list = field(default_factory=list)

    def to_dict(self):
        return {'verdict': self.verdict, 'level': self.level,
                'fresh': [sorted(_key(b) for b in level)
                          for level in self.fresh],
                'heights': list(self.heights)}


def pcf_detect(f, cap=6, exact_degree_cap=8):
    """Detect whether the critical orbit of f looks finite or infinite.

    A level whose square-free part brings a basis factor of larger degree
    or height than any before means an infinite orbit. Two consecutive
    levels bringing nothing new, with heights not growing, mean PCF.
    Otherwise the answer is left undetermined at the cap.
    """
    f = _check_poly(f)
    if isinstance(cap, bool) or int(cap) != cap or cap < 2:
        raise ValueError(f'cap should be an integer >= 2, got {cap!r}')
    discs = disc_poly_sequence(f, int(cap),
                               exact_degree_cap=exact_degree_cap)
    squarefree = [D.squarefree for D in discs]
    result = PCFResult(verdict=UNDETERMINED, level=int(cap))
    basis = PolyCoprimeBasis()
    quiet = 0
    for n, s in enumerate(squarefree, start=1):
        basis.refine([s])
        supports = _supports(basis, squarefree[:n])
        seen = set().union(*supports[:-1])
        fresh = supports[-1] - seen
        result.fresh.append(fresh)
        result.heights.append(_height(s))
        if n == 1:
            continue
        if fresh:
            quiet = 0
            old_degree = max((b.degree() for b in seen), default=0)
            old_height = max((_height(b) for b in seen), default=0)
            if any(b.degree() > old_degree or _height(b) > old_height
                   for b in fresh):
                result.verdict, result.level = INFINITE_ORBIT, n
                return result
        else:
            quiet += 1
            if quiet >= 2 and result.heights[-1] <= max(result.heights[:-1]):
                result.verdict, result.level = PCF_DETECTED, n
                return result
    return result


@dataclass
class LevelFreshness:
    level: int
    squarefree: Poly
    support: frozenset
    fresh: frozenset

    @property
    def passed(self):
        return bool(self.fresh)

    def to_dict(self):
        return {'level': self.level,
                'squarefree': _key(self.squarefree),
                'support': sorted(_key(b) for b in self.support),
                'fresh': sorted(_key(b) for b in self.fresh),
                'passed': self.passed}


def freshness(squarefree):
    """Per level, the basis factors of s_n absent from every s_i, i < n."""
    basis = PolyCoprimeBasis(squarefree)
    supports = _supports(basis, squarefree)
    out = []
    for n, (s, support) in enumerate(zip(squarefree, supports), start=1):
        seen = set().union(*supports[:n - 1])
        out.append(LevelFreshness(level=n, squarefree=s, support=support,
                                  fresh=frozenset(support - seen)))
    return out


@dataclass
class MonodromyReport:
    """Outcome of :func:`certify_monodromy`.

    ``evidence`` is 'morse-verified', 'assumed' or None when the Morse test
    failed. ``arithmetic_classes`` holds the classes of D_n over Q(t),
    leading constant included; they are recorded, not used.
    """
    poly: RatPoly
    levels: int
    hypothesis: str
    evidence: str = None
    pcf: PCFResult = None
    levels_checked: list = field(default_factory=list)
    arithmetic_classes: list = field(default_factory=list)
    critical_irreducible: bool = None
    verdict: str = UNKNOWN
    reason: str = None
    options: dict = field(default_factory=dict)
    recorded: dict = field(default=None, repr=False, compare=False)

    @property
    def exit_code(self):
        return exit_code(self.verdict)

    def to_dict(self):
        return {
            'input': {'poly': [format_rat(c) for c in self.poly.coeffs],
                      'levels': self.levels, 'hypothesis': self.hypothesis},
            'evidence': self.evidence,
            'pcf': None if self.pcf is None else self.pcf.to_dict(),
            'freshness': [x.to_dict() for x in self.levels_checked],
            'arithmeticClasses': list(self.arithmetic_classes),
            'criticalIrreducible': self.critical_irreducible,
            'verdict': self.verdict,
            'reason': self.reason,
            'options': dict(self.options),
        }

    @classmethod
    def from_dict(cls, data):
        """Restore the verdict and input; level details stay as dicts."""
        inp = data['input']
        report = cls(poly=RatPoly([to_rat(c) for c in inp['poly']]),
                     levels=inp['levels'], hypothesis=inp['hypothesis'],
                     evidence=data.get('evidence'),
                     arithmetic_classes=data.get('arithmeticClasses', []),
                     critical_irreducible=data.get('criticalIrreducible'),
                     verdict=data['verdict'], reason=data.get('reason'),
                     options=data.get('options', {}))
        report.recorded = data
        return report

    def replay(self):
        return certify_monodromy(self.poly, self.levels, self.hypothesis,
                                 **self.options)

    def replay_matches(self):
        recorded = self.recorded or self.to_dict()
        return self.replay().to_dict() == recorded


def certify_monodromy(f, levels, hypothesis=MORSE, pcf_cap=6, path='auto'):
    """Freshness test of Gamma'_n for n = 1..levels.

    Returns
    -------
    MonodromyReport
        SURJECTIVE_THROUGH_LEVEL_N when the hypothesis has evidence and
        every level is fresh, CRITERION_FAILED_AT_LEVEL_n at the first
        level that is not, UNKNOWN when the Morse test fails, and
        INVALID_INPUT for odd degree.
    """
    if hypothesis not in HYPOTHESES:
        raise ValueError(f'hypothesis should be one of {HYPOTHESES}, got '
                         f'{hypothesis!r}')
    if path not in PATHS:
        raise ValueError(f'path should be one of {sorted(PATHS)}, got '
                         f'{path!r}')
    f = _check_poly(f)
    levels = check_levels(levels)
    report = MonodromyReport(poly=f, levels=levels, hypothesis=hypothesis,
                             options={'pcf_cap': pcf_cap, 'path': path})
    if f.degree % 2:
        report.verdict = INVALID_INPUT
        report.reason = f'degree {f.degree} is odd'
        return report
    f1 = f.derivative().poly
    report.critical_irreducible = bool(f1.is_irreducible)
    if hypothesis == ASSUMED:
        report.evidence = ASSUMED
    elif morse_check(f):
        report.evidence = MORSE_VERIFIED
    report.pcf = pcf_detect(f, pcf_cap, exact_degree_cap=PATHS['auto'])

    discs = disc_poly_sequence(f, levels, exact_degree_cap=PATHS[path])
    report.levels_checked = freshness([D.squarefree for D in discs])
    report.arithmetic_classes = [
        class_of_tpolynomial(D.value, ARITHMETIC).to_dict() for D in discs]

    failed = [x.level for x in report.levels_checked if not x.passed]
    if failed:
        report.verdict = f'{CRITERION_FAILED_AT_LEVEL}_{failed[0]}'
        report.reason = (f'every odd-multiplicity factor of D_{failed[0]} '
                         f'already occurs at a lower level')
    elif report.evidence is None:
        report.verdict = UNKNOWN
        report.reason = ('f fails the Morse test; pass '
                         "hypothesis='assumed' to assert big monodromy")
    else:
        report.verdict = f'{SURJECTIVE_THROUGH_LEVEL}_{levels}'
    return report


class MonodromyCertifier(BaseEstimator):
    """Certify the iterated monodromy group of f through a level.

    Parameters
    ----------
    levels : int, default=3
    hypothesis : {'morse', 'assumed'}, default='morse'
    pcf_cap : int, default=6
    path : {'auto', 'exact', 'fast'}, default='auto'
        How D_n(t) is computed: exactly, through the critical orbit, or
        exactly while d^n <= 8.
    verbose : bool, default=False

    Attributes
    ----------
    report_ : MonodromyReport
    verdict_ : str
    """

    def __init__(self, levels=3, hypothesis=MORSE, pcf_cap=6, path='auto',
                 verbose=False):
        self.levels = levels
        self.hypothesis = hypothesis
        self.pcf_cap = pcf_cap
        self.path = path
        self.verbose = verbose

    def certify(self, f):
        self.report_ = certify_monodromy(f, self.levels, self.hypothesis,
                                         pcf_cap=self.pcf_cap,
                                         path=self.path)
        self.verdict_ = self.report_.verdict
        if self.verbose:
            for x in self.report_.levels_checked:
                print(f'[MonodromyCertifier] level {x.level}: '
                      f'{"fresh" if x.passed else "not fresh"}')
            print(f'[MonodromyCertifier] verdict {self.verdict_}')
        return self.report_
