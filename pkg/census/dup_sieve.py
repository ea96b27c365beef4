"""
Interval sieves behind the dup function.

For odd k in (a, b] the sieve counts m(k), the number of distinct primes
p <= n dividing k, by striding over the odd multiples of each p. dup(k) is
then max(m(k) - 1, 0). Long intervals are processed in fixed-size segments.
"""

import numpy as np

from kernel.odd_multiples import f

SEGMENT_ODD_COUNT = 1 << 20


def factor_count_segment(low, count, primes):
    """m(k) for the odd k = low, low + 2, ..., low + 2 * (count - 1)"""
    m = np.zeros(count, dtype=np.int32)
    for p in primes:
        first = f(low - 2, p)  # first odd multiple of p that is >= low
        offset = (first - low) // 2
        if offset < count:
            # consecutive odd multiples of p are p odd slots apart
            m[offset::p] += 1
    return m


def iter_factor_counts(a, b, primes, segment=SEGMENT_ODD_COUNT):
    """Yield (low, m) segments covering every odd k in (a, b]"""
    low = a + 2
    while low <= b:
        count = min(segment, (b - low) // 2 + 1)
        yield low, factor_count_segment(low, count, primes)
        low += 2 * count


def sieve_dup_sum(a, b, primes, segment=SEGMENT_ODD_COUNT):
    """Sum of max(m(k) - 1, 0) over odd k in (a, b]"""
    total = 0
    for _, m in iter_factor_counts(a, b, primes, segment):
        total += int(np.maximum(m - 1, 0).sum())
    return total


def uncounted_composites(a, b, n, oracle):
    """Odd composites in (a, b] whose prime factors all exceed n, by direct factorization"""
    found = []
    for k in range(a + 2, b + 1, 2):
        factors = oracle.factorize(k)
        if factors[0][0] > n and factors != [(k, 1)]:
            found.append(k)
    return found
