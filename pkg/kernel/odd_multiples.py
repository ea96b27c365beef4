import math
from dataclasses import dataclass
from numbers import Integral

import numpy as np

from kernel.errors import DomainError, KernelOverflowError

U64_MAX = (1 << 64) - 1
I64_MAX = (1 << 63) - 1
MIN_WINDOW_N = 5


def require_odd(value, name='n', minimum=1):
    """Validate a positive odd integer argument and return it as a Python int"""
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if value % 2 == 0:
        raise DomainError(f"{name} must be odd, got {value}")
    if value < minimum:
        raise DomainError(f"{name} must be at least {minimum}, got {value}")
    return value


def ceil_sqrt(n):
    root = math.isqrt(n)
    return root if root * root == n else root + 1


def f(n, x):
    """Smallest odd multiple of x strictly greater than n"""
    n = require_odd(n, 'n')
    x = require_odd(x, 'x')
    if n + 2 * x > U64_MAX:
        raise KernelOverflowError(f"f({n}, {x}) leaves the 64-bit range")
    # Python's % is the Euclidean remainder for a positive modulus, so f(1, 3) = 3
    return n + 2 * x - (n - x) % (2 * x)


def largest_odd_multiple_at_most(n, x):
    """Greatest odd multiple of x not exceeding n, i.e. f(n, x) - 2x"""
    n = require_odd(n, 'n')
    x = require_odd(x, 'x')
    if n > U64_MAX:
        raise KernelOverflowError(f"n={n} is outside the 64-bit range")
    if n < x:
        raise DomainError(f"largest odd multiple needs n >= x, got n={n}, x={x}")
    return n - (n - x) % (2 * x)


def f_array(n, xs):
    """Vectorized f(n, x) over an int64 array of odd x"""
    n = require_odd(n, 'n')
    xs = np.asarray(xs, dtype=np.int64)
    if xs.size == 0:
        return xs.copy()
    if int(xs.min()) < 1 or np.any(xs % 2 == 0):
        raise DomainError("every x must be a positive odd integer")
    if n + 2 * int(xs.max()) > I64_MAX:
        raise KernelOverflowError(f"vectorized f({n}, x) leaves the int64 range")
    return n + 2 * xs - np.mod(n - xs, 2 * xs)


@dataclass(frozen=True)
class PrimeWindow:
    n: int
    primes: tuple

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)


class KernelEngine:
    """
    Window-level quantities built on f:
    - the prime window (odd primes up to the ceiling of sqrt(n))
    - the sorted list of f(n, p) over that window
    - c1, the smallest odd composite above n
    """

    def __init__(self, oracle):
        self.oracle = oracle

    def prime_window(self, n):
        """Odd primes p with 3 <= p <= ceil(sqrt(n)), taken from the oracle's sieve"""
        n = require_odd(n, 'n')
        if n < MIN_WINDOW_N:
            raise DomainError(f"window empty: prime window needs n >= {MIN_WINDOW_N}, got {n}")
        return PrimeWindow(n, tuple(self.oracle.odd_primes_up_to(ceil_sqrt(n))))

    def window_values(self, n):
        """Sorted f(n, p) for every p in the prime window"""
        return sorted(f(n, p) for p in self.prime_window(n))

    def smallest_odd_composite_above(self, n):
        """c1 = min of f(n, p) over the prime window"""
        c1 = None
        for p in self.prime_window(n):
            value = f(n, p)
            if c1 is None or value < c1:
                c1 = value
                if c1 - n == 2:
                    break
        return c1
