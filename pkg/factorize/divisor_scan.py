from dataclasses import dataclass, field

import numpy as np

from kernel.errors import CapacityError, DomainError
from kernel.odd_multiples import ceil_sqrt, f, f_array, require_odd
from oracle.sieve import configured_limit

SCAN_BLOCK = 1 << 20


@dataclass(frozen=True)
class DivisorScan:
    """Solutions x of f(n - 2, x) = n, i.e. the divisors of odd n"""
    n: int
    solutions: tuple
    prime_solutions: tuple
    bounded: bool = False
    scanned: int = field(default=0, compare=False)

    @property
    def omega_weak(self):
        return len(self.prime_solutions)

    @property
    def is_prime(self):
        return self.solutions == (1, self.n)

    def to_dict(self):
        return {
            'n': self.n,
            'solutions': list(self.solutions),
            'prime_solutions': list(self.prime_solutions),
            'omega': self.omega_weak,
            'bounded': self.bounded,
        }


def _prime_solutions(solutions):
    # A solution is prime when no smaller solution above 1 divides it
    primes = []
    for x in solutions:
        if x > 1 and all(x % p for p in primes):
            primes.append(x)
    return tuple(primes)


class DivisorScanner:
    """
    Factorization through the kernel equation f(n - 2, x) = n:
    - full scan over odd x in [1, n], in blocks, up to the scan limit
    - bounded scan over odd x in [1, ceil(sqrt(n))] with cofactors by division
    - weak omega (distinct prime factors up to a bound) by trial division
    """

    def __init__(self, oracle, scan_limit=None):
        self.oracle = oracle
        self.scan_limit = configured_limit() if scan_limit is None else scan_limit

    def divisor_test(self, n, x):
        """True iff f(n - 2, x) = n, i.e. x divides n"""
        n = require_odd(n, 'n', minimum=3)
        x = require_odd(x, 'x')
        return f(n - 2, x) == n

    def _iter_scan(self, n, bounded):
        """Yield (xs, f(n - 2, xs)) over the odd x to scan, SCAN_BLOCK values at a time"""
        stop = ceil_sqrt(n) if bounded else n
        if stop > self.scan_limit:
            hint = "" if bounded else "; a bounded scan (--bounded) only needs x <= ceil(sqrt(n))"
            raise CapacityError(f"scanning x up to {stop} for n={n} exceeds the scan limit {self.scan_limit}{hint}")
        for start in range(1, stop + 1, 2 * SCAN_BLOCK):
            xs = np.arange(start, min(start + 2 * SCAN_BLOCK, stop + 1), 2, dtype=np.int64)
            yield xs, f_array(n - 2, xs)

    def odd_divisors(self, n, bounded=False):
        """Collect every odd x with f(n - 2, x) = n"""
        n = require_odd(n, 'n', minimum=3)
        small, scanned = [], 0
        for xs, values in self._iter_scan(n, bounded):
            small.extend(int(x) for x in xs[values == n])
            scanned += len(xs)
        if bounded:
            found = set(small)
            found.update(n // x for x in small)
            solutions = tuple(sorted(found))
        else:
            solutions = tuple(small)
        return DivisorScan(
            n=n,
            solutions=solutions,
            prime_solutions=_prime_solutions(solutions),
            bounded=bounded,
            scanned=scanned,
        )

    def residual_table(self, n, bounded=False):
        """Rows (n, x, f(n - 2, x) - n) for every scanned x"""
        n = require_odd(n, 'n', minimum=3)
        return [(n, int(x), int(v) - n)
                for xs, values in self._iter_scan(n, bounded)
                for x, v in zip(xs, values)]

    def is_prime_by_solution_count(self, n):
        """Prime iff the only solutions are 1 and n"""
        return self.odd_divisors(n).is_prime

    def distinct_prime_factors_up_to(self, k, bound):
        """Number of distinct primes p <= bound dividing k"""
        k = require_odd(k, 'k', minimum=3)
        if bound < 3:
            raise DomainError(f"bound must be at least 3, got {bound}")
        m = 0
        remaining = k
        for p in self.oracle.odd_primes_up_to(min(bound, k)):
            if p * p > remaining:
                break
            if remaining % p == 0:
                m += 1
                while remaining % p == 0:
                    remaining //= p
        # What is left is 1, a prime, or a product of primes above the bound
        if 1 < remaining <= bound:
            m += 1
        return m
