"""
Frobenius cycle types of f^n(x) - t and Chebotarev comparisons.

At a prime p not dividing the discriminant, the degrees of the irreducible
factors of f^n(x) - t modulo p are the cycle type of the Frobenius element
acting on the level-n preimages of t. Sampling many primes and comparing
the cycle-type frequencies with those of uniform elements of Aut(T_n)
gives evidence, never a proof, about the arboreal image.
"""
import warnings
from collections import Counter
from dataclasses import dataclass, field

import pandas as pd
from joblib import Parallel, delayed
from sklearn.base import BaseEstimator
from sympy import ZZ, primerange
from sympy.polys.galoistools import (gf_compose, gf_ddf_zassenhaus,
                                     gf_degree, gf_edf_zassenhaus, gf_monic,
                                     gf_sqf_p, gf_sub_ground)

from .exact import to_rat
from .poly import FpPoly, RatPoly
from .treegroup import CycleType, sample_cycle_types
from .utils import ArbocertWarning, check_levels

RAMIFIED = 'ramified'


def _reduce_mod(f, t, p):
    if any(c.denominator % p == 0 for c in f.coeffs):
        return None
    if t.denominator % p == 0:
        return None
    fp = FpPoly.from_ratpoly(f, p)
    if fp.degree != f.degree:
        return None
    return fp, t.numerator * pow(t.denominator, -1, p) % p


def cycle_type_mod_p(f, t, n, p, split=False):
    """Factor degrees of f^n(x) - t modulo the prime p.

    Parameters
    ----------
    f : RatPoly
    t : rational
    n : int
        Level, >= 1.
    p : int
        A prime.
    split : bool, default=False
        Also run equal-degree splitting on each distinct-degree block. The
        degrees are the same; this only exposes the actual factors.

    Returns
    -------
    CycleType or 'ramified'
        'ramified' when p divides a denominator, kills the leading
        coefficient, or f^n(x) - t is not square-free modulo p.
    """
    f = RatPoly(f)
    n = check_levels(n, name='n')
    reduced = _reduce_mod(f, to_rat(t), p)
    if reduced is None:
        return RAMIFIED
    fp, t_p = reduced
    base = fp.to_gf()
    F = [ZZ(1), ZZ(0)]
    for _ in range(n):
        F = gf_compose(base, F, p, ZZ)
    F = gf_sub_ground(F, ZZ(t_p), p, ZZ)
    if gf_degree(F) != f.degree ** n:
        return RAMIFIED
    _, F = gf_monic(F, p, ZZ)
    if not gf_sqf_p(F, p, ZZ):
        return RAMIFIED
    degrees = []
    for block, k in gf_ddf_zassenhaus(F, p, ZZ):
        if split:
            degrees.extend(gf_degree(g)
                           for g in gf_edf_zassenhaus(block, k, p, ZZ))
        else:
            degrees.extend([k] * (gf_degree(block) // k))
    return CycleType(tuple(degrees))


def _scan_chunk(f, t, n, primes):
    return [(p, cycle_type_mod_p(f, t, n, p)) for p in primes]


def total_variation(counts_a, counts_b):
    """Total-variation distance between two count tables."""
    total_a = sum(counts_a.values())
    total_b = sum(counts_b.values())
    if not (total_a and total_b):
        raise ValueError('Cannot compare empty distributions')
    keys = set(counts_a) | set(counts_b)
    return 0.5 * sum(abs(counts_a.get(k, 0) / total_a
                         - counts_b.get(k, 0) / total_b) for k in keys)


@dataclass
class ChebotarevReport:
    """Frobenius and group-sampled cycle-type frequencies.

    ``frobenius`` lists (prime, CycleType) for every unramified prime in
    increasing order, so distances at smaller bounds can be recomputed.
    """
    degree: int
    level: int
    prime_bound: int
    frobenius: list
    group_counts: Counter
    ramified: list = field(default_factory=list)

    @property
    def frobenius_counts(self):
        return Counter(ct for _, ct in self.frobenius)

    @property
    def tv_distance(self):
        return total_variation(self.frobenius_counts, self.group_counts)

    def tv_at(self, bound):
        counts = Counter(ct for p, ct in self.frobenius if p <= bound)
        return total_variation(counts, self.group_counts)

    def tv_schedule(self, bounds=None):
        """TV distance at growing prime bounds (powers of 10 by default)."""
        if bounds is None:
            bounds = [10 ** k for k in range(2, 12)
                      if 10 ** k < self.prime_bound] + [self.prime_bound]
        return pd.Series([self.tv_at(b) for b in bounds], index=bounds,
                         name='tv_distance')

    @property
    def table(self):
        frob = self.frobenius_counts
        keys = sorted(set(frob) | set(self.group_counts))
        df = pd.DataFrame({
            'cycle_type': [str(k) for k in keys],
            'frobenius_count': [frob.get(k, 0) for k in keys],
            'group_count': [self.group_counts.get(k, 0) for k in keys],
        })
        df['frobenius_frequency'] = (df['frobenius_count']
                                     / df['frobenius_count'].sum())
        df['group_frequency'] = df['group_count'] / df['group_count'].sum()
        return df.set_index('cycle_type')

    def to_dict(self):
        table = self.table
        return {
            'degree': self.degree,
            'level': self.level,
            'primeBound': self.prime_bound,
            'unramifiedPrimes': len(self.frobenius),
            'ramifiedPrimes': list(self.ramified),
            'table': {
                ct: {'frobenius': [int(row.frobenius_count),
                                   float(row.frobenius_frequency)],
                     'group': [int(row.group_count),
                               float(row.group_frequency)]}
                for ct, row in table.iterrows()},
            'tvDistance': float(self.tv_distance),
        }


def chebotarev_scan(f, t, n, prime_bound=10 ** 5, seed=0,
                    n_samples=10 ** 6, max_leaves=64, n_jobs=None,
                    chunk_size=2000):
    """Frobenius cycle types at primes <= prime_bound against Aut(T_n).

    Returns
    -------
    ChebotarevReport

    Raises
    ------
    ValueError
        If d^n exceeds max_leaves or no prime is unramified.
    """
    f = RatPoly(f)
    n = check_levels(n, name='n')
    t = to_rat(t)
    d = f.degree
    if d < 2:
        raise ValueError(f'f should have degree >= 2, got {f.to_string()}')
    if d ** n > max_leaves:
        raise ValueError(f'd^n = {d ** n} exceeds max_leaves={max_leaves}')
    primes = list(primerange(2, prime_bound + 1))
    chunks = [primes[i:i + chunk_size]
              for i in range(0, len(primes), chunk_size)]
    results = Parallel(n_jobs=n_jobs)(
        delayed(_scan_chunk)(f, t, n, chunk) for chunk in chunks)
    frobenius, ramified = [], []
    for chunk in results:
        for p, ct in chunk:
            if ct == RAMIFIED:
                ramified.append(p)
            else:
                frobenius.append((p, ct))
    if not frobenius:
        raise ValueError(f'No unramified primes <= {prime_bound}')
    if ramified:
        warnings.warn(f'{len(ramified)} ramified primes dropped from the '
                      f'scan: {ramified[:10]}', ArbocertWarning)
    group_counts = sample_cycle_types(d, n, n_samples, random_state=seed)
    return ChebotarevReport(degree=d, level=n, prime_bound=prime_bound,
                            frobenius=frobenius, group_counts=group_counts,
                            ramified=ramified)


class ChebotarevScan(BaseEstimator):
    """Compare Frobenius statistics of f^n(x) - t with Aut(T_n).

    Parameters
    ----------
    prime_bound : int, default=10**5
        Primes up to this bound are scanned.
    n_samples : int, default=10**6
        Monte Carlo samples of Aut(T_n).
    max_leaves : int, default=64
        Refuse levels with more leaves.
    n_jobs : int, optional
        joblib workers for the prime scan.
    random_state : int or RandomState, default=0
    verbose : bool, default=False

    Attributes
    ----------
    report_ : ChebotarevReport
    tv_distance_ : float
    """

    def __init__(self, prime_bound=10 ** 5, n_samples=10 ** 6,
                 max_leaves=64, n_jobs=None, random_state=0, verbose=False):
        self.prime_bound = prime_bound
        self.n_samples = n_samples
        self.max_leaves = max_leaves
        self.n_jobs = n_jobs
        self.random_state = random_state
        self.verbose = verbose

    def scan(self, f, t=0, level=1):
        self.report_ = chebotarev_scan(
            f, t, level, prime_bound=self.prime_bound,
            seed=self.random_state, n_samples=self.n_samples,
            max_leaves=self.max_leaves, n_jobs=self.n_jobs)
        self.tv_distance_ = self.report_.tv_distance
        if self.verbose:
            print(f'[ChebotarevScan] level {level}: '
                  f'{len(self.report_.frobenius)} primes, '
                  f'TV distance {self.tv_distance_:.4f}')
        return self
