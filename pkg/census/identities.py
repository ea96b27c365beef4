import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from census.dup_sieve import sieve_dup_sum
from classify.gap_test import GapClassifier
from factorize.divisor_scan import DivisorScanner
from kernel.errors import DomainError, InconsistencyError
from kernel.odd_multiples import f, require_odd

logger = logging.getLogger(__name__)

# Censuses reach (n + 2)^2, which must stay inside the kernel's 64-bit range
MAX_CENSUS_N = (1 << 31) - 3


class Interval(Enum):
    FULL = 'full'
    LOWER = 'lower'
    UPPER = 'upper'


def interval_bounds(n, which):
    """(a, b) for the census interval (a, b] around n"""
    which = Interval(which)
    square, middle, next_square = n * n, n * (n + 2), (n + 2) * (n + 2)
    if which is Interval.FULL:
        return square, next_square
    if which is Interval.LOWER:
        return square, middle
    return middle, next_square


def _require_interval(a, b):
    a = require_odd(a, 'a')
    b = require_odd(b, 'b')
    if a >= b:
        raise DomainError(f"interval needs a < b, got a={a}, b={b}")
    return a, b


def multiples_count(a, b, x):
    """Number of odd multiples of x in (a, b]"""
    a, b = _require_interval(a, b)
    x = require_odd(x, 'x')
    span = f(b, x) - f(a, x)
    if span % (2 * x):
        raise InconsistencyError(f"f({b}, {x}) - f({a}, {x}) is not a multiple of {2 * x}")
    return span // (2 * x)


def c_term(a, b, x):
    """((b - x) mod 2x - (a - x) mod 2x) / 2x"""
    return Fraction((b - x) % (2 * x) - (a - x) % (2 * x), 2 * x)


def sum_over_primes(numerator, primes, scale=1):
    """Exact sum of numerator(p) / (scale * p) over distinct primes, on one common denominator"""
    product = math.prod(primes)
    total = sum(numerator(p) * (product // p) for p in primes)
    return Fraction(total, scale * product)


def c_sum_over(a, b, primes):
    return sum_over_primes(lambda p: (b - p) % (2 * p) - (a - p) % (2 * p), primes, scale=2)


@dataclass
class IntervalCensus:
    """One count of the odd integers in (a, b] against the odd primes up to n"""
    a: int
    b: int
    n: int
    per_prime_counts: dict
    dup: int
    c_sum: Fraction
    pi_diff: int
    epsilon: int
    interval: Interval = field(default=Interval.FULL, compare=False)

    @property
    def expected_odd(self):
        return (self.b - self.a) // 2

    @property
    def multiples_total(self):
        return sum(self.per_prime_counts.values())

    @property
    def counted_odd(self):
        return self.multiples_total - self.dup + self.pi_diff + self.epsilon

    @property
    def composite_count(self):
        """Odd composites in (a, b], as f counts them"""
        return self.multiples_total - self.dup + self.epsilon

    def sum_recip(self):
        """2 * (dup + sum C - pi_diff - epsilon) / (b - a) + 1"""
        return 2 * (self.dup + self.c_sum - self.pi_diff - self.epsilon) / Fraction(self.b - self.a) + 1

    def to_dict(self):
        return {
            'a': self.a,
            'b': self.b,
            'n': self.n,
            'counts': {str(p): c for p, c in self.per_prime_counts.items()},
            'dup': self.dup,
            'c_sum': {'num': self.c_sum.numerator, 'den': self.c_sum.denominator},
            'pi_diff': self.pi_diff,
            'epsilon': self.epsilon,
        }


class CensusCalculator:
    """
    Exact interval censuses and the reciprocal-sum identities they yield:
    - full interval (n^2, (n+2)^2] with the epsilon correction
    - lower half (n^2, n(n+2)] without it
    - upper half (n(n+2), (n+2)^2] with it
    All arithmetic is done in fractions.Fraction.
    """

    def __init__(self, oracle):
        self.oracle = oracle
        self.classifier = GapClassifier(oracle)
        self.scanner = DivisorScanner(oracle)

    def _require_n(self, n, minimum=5):
        n = require_odd(n, 'n', minimum=minimum)
        if n > MAX_CENSUS_N:
            raise DomainError(f"census needs n <= {MAX_CENSUS_N}, got {n}")
        return n

    multiples_count = staticmethod(multiples_count)

    def dup_of(self, k, n):
        """m - 1 for the m distinct primes <= n dividing k, or 0 when m = 0"""
        n = require_odd(n, 'n', minimum=3)
        m = self.scanner.distinct_prime_factors_up_to(k, n)
        return m - 1 if m else 0

    def dup_sum(self, a, b, n):
        """Sum of dup(k, n) over odd k in (a, b], by interval sieve"""
        a, b = _require_interval(a, b)
        n = require_odd(n, 'n', minimum=3)
        return sieve_dup_sum(a, b, self.oracle.odd_primes_up_to(n))

    def dup_sum_naive(self, a, b, n):
        """Same sum by trial division of every k"""
        a, b = _require_interval(a, b)
        return sum(self.dup_of(k, n) for k in range(a + 2, b + 1, 2))

    def c_sum(self, a, b, n):
        """Sum of the C terms over odd primes 3 <= p <= n"""
        a, b = _require_interval(a, b)
        n = require_odd(n, 'n', minimum=3)
        return c_sum_over(a, b, self.oracle.odd_primes_up_to(n))

    def epsilon(self, n):
        """1 if n + 2 is prime, from the gap test"""
        return 1 if self.classifier.classify_successor(n).verdict.is_prime else 0

    def census(self, n, which=Interval.FULL):
        """Full census record for one interval around n"""
        n = self._require_n(n)
        which = Interval(which)
        a, b = interval_bounds(n, which)
        primes = self.oracle.odd_primes_up_to(n)

        counts = {p: multiples_count(a, b, p) for p in primes}
        record = IntervalCensus(
            a=a,
            b=b,
            n=n,
            per_prime_counts=counts,
            dup=sieve_dup_sum(a, b, primes),
            c_sum=c_sum_over(a, b, primes),
            pi_diff=self.oracle.count_primes_between(a, b),
            epsilon=0 if which is Interval.LOWER else self.epsilon(n),
            interval=which,
        )
        logger.debug("Census n=%d %s: dup=%d pi_diff=%d epsilon=%d",
                     n, which.value, record.dup, record.pi_diff, record.epsilon)
        return record

    def sum_recip_full(self, n):
        return self.census(n, Interval.FULL).sum_recip()

    def sum_recip_lower(self, n):
        return self.census(n, Interval.LOWER).sum_recip()

    def sum_recip_upper(self, n):
        return self.census(n, Interval.UPPER).sum_recip()

    def direct_sum_recip(self, n):
        """Exact sum of 1/p over odd primes p <= n"""
        n = require_odd(n, 'n', minimum=3)
        return sum_over_primes(lambda p: 1, self.oracle.odd_primes_up_to(n))

    def sum_recip(self, n, which='full'):
        """Dispatch over full / lower / upper / direct"""
        if which == 'direct':
            return self.direct_sum_recip(n)
        return self.census(n, Interval(which)).sum_recip()

    def solve_pi_window(self, n, which=Interval.FULL):
        """Number of primes in the interval, recovered from the identity and the direct sum"""
        n = self._require_n(n)
        which = Interval(which)
        a, b = interval_bounds(n, which)
        primes = self.oracle.odd_primes_up_to(n)
        dup = sieve_dup_sum(a, b, primes)
        c_sum = c_sum_over(a, b, primes)
        eps = 0 if which is Interval.LOWER else self.epsilon(n)

        pi_diff = dup + c_sum - eps - Fraction(b - a, 2) * (self.direct_sum_recip(n) - 1)
        if pi_diff.denominator != 1 or pi_diff < 0:
            raise InconsistencyError(f"identity for n={n} ({which.value}) gives pi difference {pi_diff}")
        return int(pi_diff)

    def census_table(self, lo, hi):
        """One row per odd n in [lo, hi]: census terms and both sides of the full identity"""
        rows = []
        first = max(lo, 5)
        first += 1 - first % 2
        for n in range(first, hi + 1, 2):
            record = self.census(n, Interval.FULL)
            identity = record.sum_recip()
            direct = self.direct_sum_recip(n)
            rows.append({
                'n': n,
                'dup': record.dup,
                'c_sum': record.c_sum,
                'pi_diff': record.pi_diff,
                'epsilon': record.epsilon,
                'sum_recip': identity,
                'direct': direct,
                'match': identity == direct,
            })
        return rows
