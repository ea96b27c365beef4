import logging
import math
import os
import threading

import numpy as np

from kernel.errors import CapacityError, DomainError

logger = logging.getLogger(__name__)

DEFAULT_LIMIT = 10_000_000
DEFAULT_MEMORY_CAP = 400_000_000
SEGMENT_SPAN = 1 << 22


def configured_limit():
    """Largest oracle the command line will build (ODDSIEVE_ORACLE_LIMIT)"""
    return int(os.environ.get('ODDSIEVE_ORACLE_LIMIT', DEFAULT_LIMIT))


def configured_memory_cap():
    """Hard cap on any oracle limit (ODDSIEVE_MEMORY_CAP)"""
    return int(os.environ.get('ODDSIEVE_MEMORY_CAP', DEFAULT_MEMORY_CAP))


def _sieve_flags(limit):
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if flags[p]:
            flags[p * p::2 * p] = False
    return flags


def _spf_table(limit, primes):
    spf = np.zeros(limit + 1, dtype=np.int32)
    for p in primes:
        p = int(p)
        if p * p > limit:
            break
        block = spf[p * p::p]
        block[block == 0] = p
    # Whatever is still unmarked is its own smallest factor (0 and 1 stay 0/1)
    unmarked = np.flatnonzero(spf == 0)
    spf[unmarked] = unmarked
    return spf


class PrimeOracle:
    """
    Sieve-backed ground truth for every identity in the package:
    - primality and pi(x) up to the sieve limit
    - trial-division factorization up to limit squared
    - segmented prime counts for intervals above the limit
    The oracle is immutable once built and safe to share between threads.
    """

    def __init__(self, limit, is_prime_table, primes, smallest_prime_factor=None):
        self.limit = limit
        self.is_prime_table = is_prime_table
        self.primes = primes
        self.smallest_prime_factor = smallest_prime_factor
        self._odd_primes = []
        self._odd_primes_lock = threading.Lock()

    @classmethod
    def build(cls, limit=DEFAULT_LIMIT, with_spf=False, memory_cap=None):
        """Sieve every prime up to limit"""
        if limit < 10:
            raise DomainError(f"oracle limit must be at least 10, got {limit}")
        cap = configured_memory_cap() if memory_cap is None else memory_cap
        if limit > cap:
            raise CapacityError(f"oracle limit {limit} exceeds the memory cap {cap}")

        flags = _sieve_flags(limit)
        primes = np.flatnonzero(flags).astype(np.int64)
        spf = _spf_table(limit, primes) if with_spf else None
        logger.info("Built prime oracle up to %d (%d primes%s)",
                    limit, len(primes), ", spf table" if with_spf else "")
        return cls(limit, flags, primes, spf)

    def covers(self, x):
        return x <= self.limit

    def _require_covered(self, x, what):
        if x > self.limit:
            raise CapacityError(f"{what} needs the oracle to reach {x}, but its limit is {self.limit}")

    def pi(self, x):
        """Number of primes <= x, counting 2"""
        if x < 2:
            return 0
        self._require_covered(x, "pi(x)")
        return int(np.searchsorted(self.primes, x, side='right'))

    def count_primes_between(self, a, b):
        """Number of primes in (a, b]; segments above the limit are sieved on demand"""
        if b <= a:
            return 0
        if b <= self.limit:
            return self.pi(b) - self.pi(a)
        if math.isqrt(b) > self.limit:
            raise CapacityError(
                f"counting primes up to {b} needs base primes up to {math.isqrt(b)}, "
                f"but the oracle limit is {self.limit}"
            )

        total = 0
        low = a + 1
        if low <= self.limit:
            total += self.pi(self.limit) - self.pi(a)
            low = self.limit + 1
        while low <= b:
            high = min(low + SEGMENT_SPAN, b + 1)  # exclusive
            total += int(self.segment_prime_flags(low, high).sum())
            low = high
        return total

    def segment_prime_flags(self, low, high):
        """Primality flags for [low, high) using base primes up to sqrt(high)"""
        mask = np.ones(high - low, dtype=bool)
        for p in self.primes:
            p = int(p)
            if p * p >= high:
                break
            start = max(p * p, -(-low // p) * p)
            mask[start - low::p] = False
        if low < 2:
            mask[:2 - low] = False
        return mask

    def is_prime(self, k):
        """Primality by table lookup, or trial division by sieved primes up to limit squared"""
        if k < 2:
            return False
        if k <= self.limit:
            return bool(self.is_prime_table[k])
        return self.factorize(k) == [(k, 1)]

    def factorize(self, k):
        """Complete factorization as ascending (prime, exponent) pairs"""
        if k < 2:
            raise DomainError(f"factorize needs k >= 2, got {k}")
        if k > self.limit * self.limit:
            raise CapacityError(f"cannot factor {k}: trial division only reaches {self.limit ** 2}")

        factors = []
        if self.smallest_prime_factor is not None and k <= self.limit:
            while k > 1:
                p = int(self.smallest_prime_factor[k])
                e = 0
                while k % p == 0:
                    k //= p
                    e += 1
                factors.append((p, e))
            return factors

        for p in self.primes:
            p = int(p)
            if p * p > k:
                break
            if k % p == 0:
                e = 0
                while k % p == 0:
                    k //= p
                    e += 1
                factors.append((p, e))
        if k > 1:
            factors.append((k, 1))
        return factors

    def omega(self, k):
        """Number of distinct prime factors"""
        return len(self.factorize(k)) if k >= 2 else 0

    def divisors(self, k):
        """All positive divisors of k in ascending order"""
        if k == 1:
            return [1]
        divisors = [1]
        for p, e in self.factorize(k):
            divisors = [d * p ** i for d in divisors for i in range(e + 1)]
        return sorted(divisors)

    def odd_primes_up_to(self, n):
        """Ascending odd primes 3 <= p <= n, as Python ints"""
        self._require_covered(n, "the odd prime list")
        stop = int(np.searchsorted(self.primes, n, side='right'))
        with self._odd_primes_lock:
            if stop - 1 > len(self._odd_primes):
                self._odd_primes.extend(int(p) for p in self.primes[1 + len(self._odd_primes):stop])
        return self._odd_primes[:max(stop - 1, 0)]

    def odd_prime_count(self, x):
        """pi(x) without the prime 2"""
        return max(self.pi(x) - 1, 0)
