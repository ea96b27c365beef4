import logging
from dataclasses import dataclass
from fractions import Fraction

from census.identities import CensusCalculator, sum_over_primes
from kernel.errors import DomainError, InconsistencyError
from kernel.odd_multiples import require_odd

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class PiSquareReport:
    """Odd-prime count up to n^2 assembled from dup, the B terms and the reciprocal sum"""
    n: int
    dup: int
    b_sum: Fraction
    sum_recip: Fraction
    odd_prime_count: int

    @property
    def standard_count(self):
        # the odd-only count leaves out the prime 2
        return self.odd_prime_count + 1

    def to_dict(self):
        return {
            'n': self.n,
            'dup': self.dup,
            'b_sum': {'num': self.b_sum.numerator, 'den': self.b_sum.denominator},
            'sum_recip': {'num': self.sum_recip.numerator, 'den': self.sum_recip.denominator},
            'odd_prime_count': self.odd_prime_count,
            'standard_count': self.standard_count,
        }


class PiSquareRefiner:
    """Counts the odd integers in (1, n^2] to refine pi(n^2)"""

    def __init__(self, oracle):
        self.oracle = oracle
        self.census = CensusCalculator(oracle)

    def b_term(self, n, x):
        """((n^2 - x) mod 2x + x) / 2x for an odd prime 3 <= x <= n"""
        n = require_odd(n, 'n', minimum=3)
        x = require_odd(x, 'x', minimum=3)
        if x > n or not self.oracle.is_prime(x):
            raise DomainError(f"B term needs an odd prime 3 <= x <= n, got x={x}, n={n}")
        return Fraction((n * n - x) % (2 * x) + x, 2 * x)

    def b_sum(self, n):
        """Sum of the B terms over odd primes 3 <= p <= n"""
        n = require_odd(n, 'n', minimum=3)
        square = n * n
        return sum_over_primes(lambda p: (square - p) % (2 * p) + p, self.oracle.odd_primes_up_to(n), scale=2)

    def odd_prime_count_square(self, n):
        """Odd primes up to n^2 from dup + sum B - 1/2 - (n^2 / 2)(sum 1/p - 1)"""
        n = require_odd(n, 'n', minimum=3)
        square = n * n
        dup = self.census.dup_sum(1, square, n)
        b_sum = self.b_sum(n)
        sum_recip = self.census.direct_sum_recip(n)

        count = dup + b_sum - HALF - Fraction(square, 2) * (sum_recip - 1)
        if count.denominator != 1 or count < 0:
            raise InconsistencyError(f"odd prime count up to {square} came out as {count}")
        logger.debug("pi refinement n=%d: dup=%d b_sum=%s count=%s", n, dup, b_sum, count)
        return PiSquareReport(
            n=n,
            dup=dup,
            b_sum=b_sum,
            sum_recip=sum_recip,
            odd_prime_count=int(count),
        )

    def sum_recip_square(self, n):
        """Sum of 1/p over odd primes p <= n from the census of (1, n^2]"""
        n = require_odd(n, 'n', minimum=3)
        square = n * n
        dup = self.census.dup_sum(1, square, n)
        odd_primes = self.oracle.count_primes_between(2, square)
        return 2 * (dup + self.b_sum(n) - odd_primes - HALF) / Fraction(square) + 1
