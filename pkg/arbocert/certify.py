"""
Surjectivity certificates for arboreal representations over Q.

For f of even degree d and t in Q, Aut(T_n) is the image at level n as
soon as, level by level, f(x) - alpha has Galois group A_d or S_d over
Q(alpha) for every level-(n-1) preimage alpha of t, and the class of
disc(f^n(x) - t) is outside the span of the classes at lower levels in
Q^x / Q^x2. The first condition comes from one of three sources (local
evidence valid at every level, the degree-2 argument through non-square
discriminants, or a user assertion); the second is checked here with exact
square classes or, for values too large to refine, quadratic characters.
"""
from dataclasses import dataclass, field
from fractions import Fraction

from sklearn.base import BaseEstimator
from sympy import nextprime

from .discseq import (EXACT_DEGREE_CAP, VALUE_BIT_CAP, CalibrationError,
                      InseparableError, calibrate_sign,
                      critical_orbit_residues, disc_sequence)
from .exact import FactorizationError, format_rat, to_rat
from .localval import (big_local_certificate, find_local_primes,
                       translate_root)
from .poly import RatPoly, parse_poly
from .squareclass import character_vector, in_span, outside_span_by_characters
from .utils import bit_size, check_levels

BIG_LOCAL = 'big-local'
QUADRATIC = 'quadratic'
ASSUMED = 'assumed'
MODES = (BIG_LOCAL, QUADRATIC, ASSUMED)

SURJECTIVE_ALL_LEVELS = 'SURJECTIVE_ALL_LEVELS'
SURJECTIVE_THROUGH_LEVEL = 'SURJECTIVE_THROUGH_LEVEL'
CRITERION_FAILED_AT_LEVEL = 'CRITERION_FAILED_AT_LEVEL'
UNKNOWN = 'UNKNOWN'
INVALID_INPUT = 'INVALID_INPUT'

EXIT_CODES = {
    SURJECTIVE_ALL_LEVELS: 0,
    SURJECTIVE_THROUGH_LEVEL: 0,
    CRITERION_FAILED_AT_LEVEL: 1,
    UNKNOWN: 2,
    INVALID_INPUT: 3,
}

N_CHARACTER_PRIMES = 32

QUADRATIC_JUSTIFICATION = [
    'Stoll-type argument for d = 2',
    'f(x) - alpha = x^2 + b x + c - alpha is irreducible over K(alpha) iff '
    'its discriminant is not a square in K(alpha)',
    'disc(f^n(x) - t) outside the span of lower-level classes makes '
    'K_n/K_{n-1} maximal, which forces every such discriminant to be a '
    'non-square',
    'degree-2 irreducible polynomials have Galois group S_2',
]

ASSUMED_HYPOTHESIS = ('for every level and every preimage alpha of t, '
                      'f(x) - alpha has Galois group A_d or S_d over '
                      'Q(alpha) (user assertion)')


def _verdict_kind(verdict):
    for kind in (SURJECTIVE_ALL_LEVELS, SURJECTIVE_THROUGH_LEVEL,
                 CRITERION_FAILED_AT_LEVEL):
        if verdict.startswith(kind):
            return kind
    return verdict


def exit_code(verdict):
    """0 surjective, 1 criterion failed, 2 unknown, 3 invalid input."""
    return EXIT_CODES[_verdict_kind(verdict)]


@dataclass
class StepResult:
    """Outcome of one level step.

    ``span`` lists the lower levels whose classes multiply to the level-n
    class when the step failed.
    """
    level: int
    passed: bool
    span: tuple = None
    method: str = 'exact'

    def to_dict(self):
        return {'level': self.level, 'passed': self.passed,
                'span': None if self.span is None else list(self.span),
                'method': self.method}


def check_level_step(f, t, n, prior_classes, square_class=None,
                     exact_degree_cap=EXACT_DEGREE_CAP):
    """PASS iff the level-n class is outside the span of the prior ones.

    Parameters
    ----------
    prior_classes : list of SquareClass
        Classes at levels 1..n-1, in order.
    square_class : SquareClass, optional
        Class at level n; computed when not given.

    Returns
    -------
    StepResult
        On failure, ``span`` prefers the most recent levels.
    """
    n = check_levels(n, name='n')
    if len(prior_classes) != n - 1:
        raise ValueError(f'Level {n} needs {n - 1} prior classes, got '
                         f'{len(prior_classes)}')
    if square_class is None:
        seq = disc_sequence(f, t, n, path='auto',
                            exact_degree_cap=exact_degree_cap)
        square_class = seq[n - 1].square_class
    # latest levels first so that a witness names them
    generators = list(reversed(prior_classes))
    result = in_span(square_class, generators)
    if not result.in_span:
        return StepResult(level=n, passed=True)
    span = tuple(sorted(n - 1 - i for i in result.subset))
    return StepResult(level=n, passed=False, span=span)


def check_level_step_by_characters(n, vectors):
    """PASS when the level-n character vector is outside the span of the
    lower-level ones; None (undetermined) otherwise."""
    vectors = list(vectors)
    if len(vectors) != n:
        raise ValueError(f'Level {n} needs {n} character vectors, got '
                         f'{len(vectors)}')
    if outside_span_by_characters(vectors[-1], vectors[:-1]):
        return StepResult(level=n, passed=True, method='characters')
    return None


def nonperiodicity_check(f, t, levels, value_bit_cap=VALUE_BIT_CAP,
                         max_primes=200):
    """Check f^i(t) != t for 1 <= i <= levels.

    Orbit values are compared exactly while they stay small; beyond that a
    prime r with f^i(t) != t (mod r) is a witness.

    Returns
    -------
    dict
        {'passed': bool or None, 'periodLevel': i or None,
         'witnesses': {i: 'exact' or r}}; ``passed`` is None when no
        witness was found.
    """
    f, t = RatPoly(f), to_rat(t)
    witnesses = {}
    value = t
    exact_levels = 0
    for i in range(1, levels + 1):
        if bit_size(value) * f.degree > value_bit_cap:
            break
        value = f(value)
        if value == t:
            return {'passed': False, 'periodLevel': i,
                    'witnesses': witnesses}
        witnesses[i] = 'exact'
        exact_levels = i
    pending = list(range(exact_levels + 1, levels + 1))
    r = 2
    for _ in range(max_primes):
        if not pending:
            break
        r = int(nextprime(r))
        denominators = [c.denominator for c in f.coeffs] + [t.denominator]
        if any(den % r == 0 for den in denominators):
            continue
        coeffs = [c.numerator * pow(c.denominator, -1, r) % r
                  for c in f.coeffs]
        t_r = t.numerator * pow(t.denominator, -1, r) % r
        v = t_r
        orbit = {}
        for i in range(1, levels + 1):
            acc = 0
            for c in reversed(coeffs):
                acc = (acc * v + c) % r
            v = acc
            orbit[i] = v
        for i in list(pending):
            if orbit[i] != t_r:
                witnesses[i] = r
                pending.remove(i)
    return {'passed': None if pending else True, 'periodLevel': None,
            'witnesses': witnesses}


def _character_primes(f, t, levels, constants, count, max_tries=None):
    # odd primes r at which every level value is an r-unit
    bad = [c.denominator for c in f.coeffs] + [t.denominator]
    bad.append(f.derivative().leading_coefficient.numerator)
    for c in constants:
        bad.extend([c.numerator, c.denominator])
    chosen = {}
    r = 2
    for _ in range(max_tries or 50 * count):
        if len(chosen) == count:
            break
        r = int(nextprime(r))
        if any(b % r == 0 for b in bad):
            continue
        residues = critical_orbit_residues(f, t, levels, r)
        if any(v == 0 for v in residues):
            continue
        chosen[r] = residues
    return chosen


def _residue(c, r):
    return c.numerator * pow(c.denominator, -1, r) % r


@dataclass
class Certificate:
    """Structured verdict with the evidence behind it.

    Attributes
    ----------
    verdict : str
        SURJECTIVE_ALL_LEVELS, SURJECTIVE_THROUGH_LEVEL_N,
        CRITERION_FAILED_AT_LEVEL_n, UNKNOWN or INVALID_INPUT.
    checks : list of dict
        Standing checks (degree, non-periodicity, separability).
    little_galois : dict
        Evidence that f(x) - alpha has big Galois group.
    disc_classes : list of dict
        Per level: value (below the bit cap), class, path, step result and
        character vector when used.
    assumptions : list of str
    """
    poly: RatPoly
    t: Fraction
    levels: int
    mode: str
    verdict: str = UNKNOWN
    checks: list = field(default_factory=list)
    little_galois: dict = field(default_factory=dict)
    disc_classes: list = field(default_factory=list)
    assumptions: list = field(default_factory=list)
    witness: dict = None
    reason: str = None
    options: dict = field(default_factory=dict)

    @property
    def exit_code(self):
        return exit_code(self.verdict)

    @property
    def conditional(self):
        return bool(self.assumptions)

    @property
    def is_surjective(self):
        return self.exit_code == 0

    def to_dict(self):
        return {
            'input': {'poly': [format_rat(c) for c in self.poly.coeffs],
                      't': format_rat(self.t), 'levels': self.levels,
                      'mode': self.mode},
            'checks': self.checks,
            'littleGalois': self.little_galois,
            'discClasses': self.disc_classes,
            'verdict': self.verdict,
            'conditional': self.conditional,
            'assumptions': list(self.assumptions),
            'witness': self.witness,
            'reason': self.reason,
            'options': dict(self.options),
        }

    @classmethod
    def from_dict(cls, data):
        inp = data['input']
        return cls(poly=RatPoly([to_rat(c) for c in inp['poly']]),
                   t=to_rat(inp['t']), levels=inp['levels'],
                   mode=inp['mode'], verdict=data['verdict'],
                   checks=data['checks'],
                   little_galois=data['littleGalois'],
                   disc_classes=data['discClasses'],
                   assumptions=data['assumptions'],
                   witness=data.get('witness'), reason=data.get('reason'),
                   options=data.get('options', {}))

    def replay(self):
        """Re-run the certifier on the recorded input and options."""
        options = dict(self.options)
        signs = options.pop('signs', None)
        if signs is not None:
            signs = {int(k): v for k, v in signs.items()}
        return certify_surjective(self.poly, self.t, self.levels, self.mode,
                                  signs=signs, **options)

    def replay_matches(self):
        return self.replay().to_dict() == self.to_dict()


def _log(verbose, message):
    if verbose:
        print(f'[SurjectivityCertifier] {message}')


def certify_surjective(f, t, levels, mode=QUADRATIC, p=None, q=None,
                       exact_degree_cap=EXACT_DEGREE_CAP,
                       value_bit_cap=VALUE_BIT_CAP,
                       n_character_primes=N_CHARACTER_PRIMES, signs=None,
                       all_levels_justification=None, n_jobs=None,
                       verbose=False):
    """Certify surjectivity of the arboreal representation through a level.

    Parameters
    ----------
    f : RatPoly or str
    t : rational
    levels : int
        Depth N >= 1.
    mode : {'big-local', 'quadratic', 'assumed'}
        Source of the little-Galois evidence.
    p, q : int, optional
        Primes for the big-local certificate; searched for when both are
        omitted.
    exact_degree_cap : int
        Exact discriminants up to this degree d^n.
    value_bit_cap : int
        Exact square classes up to this size; beyond it, quadratic
        characters at ``n_character_primes`` auxiliary primes.
    signs : dict, optional
        level -> sign (+1/-1) of the critical orbit product, when known
        from outside; adds the sign character on the character path.
    all_levels_justification : str, optional
        An argument that the discriminant classes stay independent at
        every level. Together with accepted big-local evidence it upgrades
        the verdict to SURJECTIVE_ALL_LEVELS.

    Returns
    -------
    Certificate
    """
    if isinstance(f, str):
        f = parse_poly(f)
    f = RatPoly(f)
    t = to_rat(t)
    levels = check_levels(levels)
    options = {'p': p, 'q': q, 'exact_degree_cap': exact_degree_cap,
               'value_bit_cap': value_bit_cap,
               'n_character_primes': n_character_primes,
               'all_levels_justification': all_levels_justification}
    if signs is not None:
        options['signs'] = {str(k): int(v) for k, v in sorted(signs.items())}
    cert = Certificate(poly=f, t=t, levels=levels, mode=mode,
                       options=options)

    def invalid(reason):
        cert.verdict = INVALID_INPUT
        cert.reason = reason
        _log(verbose, f'invalid input: {reason}')
        return cert

    if mode not in MODES:
        return invalid(f'mode should be one of {MODES}, got {mode!r}')
    d = f.degree
    even = d >= 2 and d % 2 == 0
    cert.checks.append({'name': 'evenDegree', 'passed': even, 'degree': d})
    if not even:
        return invalid(f'degree {d} is not even and >= 2')
    if mode == QUADRATIC and d != 2:
        return invalid(f'quadratic mode needs d = 2, got {d}')
    if mode == BIG_LOCAL and (p is None) != (q is None):
        return invalid('big-local mode needs both primes p and q or '
                       'neither')

    periodic = nonperiodicity_check(f, t, levels, value_bit_cap)
    cert.checks.append({'name': 'nonPeriodic', 'passed': periodic['passed'],
                        'witnesses': {str(i): w for i, w in
                                      periodic['witnesses'].items()}})
    if periodic['passed'] is False:
        return invalid(f't is periodic: f^{periodic["periodLevel"]}(t) = t')
    _log(verbose, f'non-periodicity through level {levels}: '
                  f'{periodic["passed"]}')

    # little-Galois evidence
    level_uniform = False
    if mode == BIG_LOCAL:
        g = translate_root(f, t)
        if p is None:
            try:
                found = find_local_primes(g)
            except FactorizationError as exc:
                cert.verdict = UNKNOWN
                cert.reason = f'local prime search: {exc}'
                return cert
            if found is None:
                cert.verdict = UNKNOWN
                cert.reason = 'no primes p and q pass the big-local checks'
                return cert
            p, q = found
            _log(verbose, f'local primes p={p}, q={q}')
        try:
            local = big_local_certificate(g, p, q)
        except ValueError as exc:
            return invalid(str(exc))
        cert.little_galois = {'mode': BIG_LOCAL, **local.to_dict()}
        level_uniform = local.accepted
    elif mode == QUADRATIC:
        cert.little_galois = {'mode': QUADRATIC,
                              'label': 'Stoll-type',
                              'justification': QUADRATIC_JUSTIFICATION}
    else:
        cert.little_galois = {'mode': ASSUMED, 'label': 'CONDITIONAL'}
        cert.assumptions.append(ASSUMED_HYPOTHESIS)
    _log(verbose, f'little Galois evidence: {cert.little_galois["mode"]}')

    # discriminant classes
    try:
        seq = disc_sequence(f, t, levels, path='auto',
                            exact_degree_cap=exact_degree_cap,
                            value_bit_cap=value_bit_cap, n_jobs=n_jobs)
    except InseparableError as exc:
        cert.checks.append({'name': 'separable', 'level': exc.level,
                            'passed': False})
        return invalid(str(exc))
    except CalibrationError as exc:
        cert.verdict = UNKNOWN
        cert.reason = f'calibration failed: {exc}'
        return cert

    exact_through = 0
    for entry in seq:
        if entry.square_class is None:
            break
        exact_through = entry.level
    for entry in seq.entries[:exact_through]:
        cert.checks.append({'name': 'separable', 'level': entry.level,
                            'passed': True, 'witness': 'nonzero '
                            'discriminant'})

    character_vectors = {}
    if exact_through < levels:
        constants = []
        for n in range(1, levels + 1):
            try:
                constants.append(calibrate_sign(
                    f, n, exact_degree_cap=exact_degree_cap).constant)
            except CalibrationError as exc:
                cert.verdict = UNKNOWN
                cert.reason = f'calibration failed at level {n}: {exc}'
                return cert
        primes = _character_primes(f, t, levels, constants,
                                   n_character_primes)
        if not primes:
            cert.verdict = UNKNOWN
            cert.reason = 'no auxiliary prime keeps every level an r-unit'
            return cert
        for entry in seq.entries[exact_through:]:
            cert.checks.append({'name': 'separable', 'level': entry.level,
                                'passed': True,
                                'witness': {'prime': min(primes)}})
        for n in range(1, levels + 1):
            constant = constants[n - 1]
            residues = {r: _residue(constant, r) * res[n - 1] % r
                        for r, res in primes.items()}
            entry = seq[n - 1]
            if entry.value is not None:
                sign = int(entry.value < 0)
            elif signs is not None and n in signs:
                sign = int((signs[n] < 0) != (constant < 0))
            else:
                sign = None
            character_vectors[n] = character_vector(residues, sign)

    classes = []
    failed = None
    undetermined = None
    for entry in seq:
        n = entry.level
        record = entry.to_dict(value_bit_cap)
        if n <= exact_through:
            step = check_level_step(f, t, n, classes, entry.square_class)
            classes.append(entry.square_class)
        else:
            step = check_level_step_by_characters(
                n, [character_vectors[j] for j in range(1, n + 1)])
        if n in character_vectors:
            record['characters'] = character_vectors[n].to_dict()
        record['step'] = None if step is None else step.to_dict()
        cert.disc_classes.append(record)
        _log(verbose, f'level {n}: ' + ('UNDETERMINED' if step is None
                                         else 'PASS' if step.passed
                                         else 'FAIL'))
        if step is None:
            undetermined = n
            break
        if not step.passed:
            failed = step
            break

    if failed is not None:
        cert.verdict = f'{CRITERION_FAILED_AT_LEVEL}_{failed.level}'
        cert.witness = {'level': failed.level, 'span': list(failed.span)}
        cert.reason = (f'class at level {failed.level} is the product of '
                       f'the classes at levels {list(failed.span)}')
    elif undetermined is not None:
        cert.verdict = UNKNOWN
        cert.reason = (f'characters do not separate level {undetermined} '
                       f'from lower levels')
    elif mode == BIG_LOCAL and not level_uniform:
        cert.verdict = UNKNOWN
        cert.reason = ('big-local check '
                       f'({cert.little_galois.get("failedCheck")}) failed: '
                       f'{cert.little_galois.get("reason")}')
    elif periodic['passed'] is None:
        cert.verdict = UNKNOWN
        cert.reason = 'non-periodicity could not be certified'
    elif level_uniform and all_levels_justification:
        cert.verdict = SURJECTIVE_ALL_LEVELS
        cert.little_galois['allLevelsJustification'] = \
            all_levels_justification
    else:
        cert.verdict = f'{SURJECTIVE_THROUGH_LEVEL}_{levels}'
    _log(verbose, f'verdict {cert.verdict}')
    return cert


class SurjectivityCertifier(BaseEstimator):
    """Certify surjectivity of the arboreal representation of (f, t).

    Parameters
    ----------
    levels : int, default=3
    mode : {'big-local', 'quadratic', 'assumed'}, default='quadratic'
    p, q : int, optional
        Primes for the big-local mode.
    exact_degree_cap : int, default=64
    value_bit_cap : int, default=10**6
    n_character_primes : int, default=32
    n_jobs : int, optional
    verbose : bool, default=False

    Attributes
    ----------
    certificate_ : Certificate
    verdict_ : str
    """

    def __init__(self, levels=3, mode=QUADRATIC, p=None, q=None,
                 exact_degree_cap=EXACT_DEGREE_CAP,
                 value_bit_cap=VALUE_BIT_CAP,
                 n_character_primes=N_CHARACTER_PRIMES, n_jobs=None,
                 verbose=False):
        self.levels = levels
        self.mode = mode
        self.p = p
        self.q = q
        self.exact_degree_cap = exact_degree_cap
        self.value_bit_cap = value_bit_cap
        self.n_character_primes = n_character_primes
        self.n_jobs = n_jobs
        self.verbose = verbose

    def certify(self, f, t=0, signs=None, all_levels_justification=None):
        self.certificate_ = certify_surjective(
            f, t, self.levels, self.mode, p=self.p, q=self.q,
            exact_degree_cap=self.exact_degree_cap,
            value_bit_cap=self.value_bit_cap,
            n_character_primes=self.n_character_primes, signs=signs,
            all_levels_justification=all_levels_justification,
            n_jobs=self.n_jobs, verbose=self.verbose)
        self.verdict_ = self.certificate_.verdict
        return self.certificate_

