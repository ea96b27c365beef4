import logging
from concurrent.futures import ProcessPoolExecutor

from tqdm import tqdm

from census.dup_sieve import uncounted_composites
from census.identities import CensusCalculator, Interval
from classify.gap_test import GapClassifier, Verdict
from factorize.divisor_scan import DivisorScanner
from kernel.odd_multiples import KernelEngine, f, largest_odd_multiple_at_most
from oracle.sieve import PrimeOracle
from pi_refine.refinement import PiSquareRefiner
from verification.monitor import FailureMonitor

logger = logging.getLogger(__name__)

SUITES = ('kernel', 'classify', 'factorize', 'census', 'pisquare')
SUITE_MINIMUM = {'kernel': 1, 'classify': 5, 'factorize': 3, 'census': 5, 'pisquare': 3}
KERNEL_MODULI = range(3, 100, 2)
CHUNK_SIZE = 256


def required_limit(max_n, suites):
    """Oracle limit a sweep up to max_n needs for the chosen suites"""
    limit = max_n + 8
    if 'census' in suites:
        limit = max(limit, (max_n + 2) ** 2)
    if 'pisquare' in suites:
        limit = max(limit, max_n * max_n)
    return max(limit, 100)


class SweepValidator:
    """
    Checks every module against the sieve oracle for one odd n at a time:
    - kernel: f lands on the next odd multiple, c1 is the next odd composite
    - classify: the gap verdict matches primality of n + 2 (and n + 4 for twins)
    - factorize: solutions of f(n - 2, x) = n are exactly the divisors of n
    - census: the four reciprocal sums agree, pi differences solve exactly,
      and every odd integer of each interval is accounted for
    - pisquare: the refined count equals pi(n^2) - 1
    """

    def __init__(self, oracle):
        self.oracle = oracle
        self.kernel = KernelEngine(oracle)
        self.classifier = GapClassifier(oracle)
        self.scanner = DivisorScanner(oracle)
        self.census = CensusCalculator(oracle)
        self.refiner = PiSquareRefiner(oracle)

    def check_kernel(self, n):
        problems = []
        for x in KERNEL_MODULI:
            value = f(n, x)
            if value % x or value % 2 == 0 or value <= n or value - 2 * x > n:
                problems.append(f"f({n}, {x}) = {value} is not the next odd multiple")
            if n >= x and largest_odd_multiple_at_most(n, x) + 2 * x != value:
                problems.append(f"largest odd multiple of {x} below {n} disagrees with f")
        if n >= 5:
            c1 = self.kernel.smallest_odd_composite_above(n)
            expected = next(k for k in range(n + 2, n + 9, 2) if not self.oracle.is_prime(k))
            if c1 != expected or c1 - n not in (2, 4, 6):
                problems.append(f"c1 over {n} is {c1}, expected {expected}")
        return problems

    def check_classify(self, n):
        result = self.classifier.classify_successor(n)
        problems = []
        if result.verdict.is_prime != self.oracle.is_prime(n + 2):
            problems.append(f"gap {result.gap} misclassifies {n + 2}")
        twin = self.oracle.is_prime(n + 2) and self.oracle.is_prime(n + 4)
        if (result.verdict is Verdict.TWIN_LOWER) != twin:
            problems.append(f"twin status of {n + 2} wrong (gap {result.gap})")
        return problems

    def check_factorize(self, n):
        problems = []
        scan = self.scanner.odd_divisors(n)
        if list(scan.solutions) != self.oracle.divisors(n):
            problems.append(f"solutions for {n} differ from its divisors")
        if scan.is_prime != self.oracle.is_prime(n):
            problems.append(f"two-solution test wrong for {n}")
        if self.scanner.distinct_prime_factors_up_to(n, n) != self.oracle.omega(n):
            problems.append(f"distinct prime factor count wrong for {n}")
        return problems

    def check_census(self, n):
        problems = []
        direct = self.census.direct_sum_recip(n)
        for which in Interval:
            record = self.census.census(n, which)
            if record.sum_recip() != direct:
                problems.append(f"{which.value} identity gives {record.sum_recip()}, direct sum {direct}")
            if self.census.solve_pi_window(n, which) != record.pi_diff:
                problems.append(f"{which.value} pi difference does not solve back exactly")
            extra = len(uncounted_composites(record.a, record.b, n, self.oracle))
            counted = record.multiples_total - record.dup + record.pi_diff + extra
            if counted != record.expected_odd or extra != record.epsilon:
                problems.append(f"{which.value} census counts {counted} of {record.expected_odd} odd integers")
        return problems

    def check_pisquare(self, n):
        problems = []
        report = self.refiner.odd_prime_count_square(n)
        expected = self.oracle.pi(n * n) - 1
        if report.odd_prime_count != expected:
            problems.append(f"odd prime count up to {n * n} is {report.odd_prime_count}, expected {expected}")
        if self.refiner.sum_recip_square(n) != report.sum_recip:
            problems.append(f"reciprocal sum from (1, {n * n}] disagrees with the direct sum")
        return problems

    def run_chunk(self, values, suites):
        """Outcomes (suite, n, problems) for one slice of the sweep, in n order"""
        outcomes = []
        for n in values:
            for suite in suites:
                if n < SUITE_MINIMUM[suite]:
                    continue
                try:
                    problems = getattr(self, f'check_{suite}')(n)
                except Exception as exc:
                    problems = [f"raised {type(exc).__name__}: {exc}"]
                outcomes.append((suite, n, problems))
        return outcomes


_worker = None


def _init_worker(limit):
    global _worker
    _worker = SweepValidator(PrimeOracle.build(limit, with_spf=True))


def _run_worker_chunk(args):
    values, suites = args
    return _worker.run_chunk(values, suites)


def run_sweep(max_n, suites=SUITES, threads=1, oracle=None, progress=True):
    """Sweep every odd n <= max_n; results are merged in n order for any worker count"""
    suites = tuple(suites)
    limit = required_limit(max_n, suites)
    values = list(range(1, max_n + 1, 2))
    chunks = [(values[i:i + CHUNK_SIZE], suites) for i in range(0, len(values), CHUNK_SIZE)]
    monitor = FailureMonitor(suites)
    logger.info("Sweeping odd n <= %d over %s with %d worker(s)", max_n, ", ".join(suites), threads)

    bar = tqdm(total=len(values), desc="verify", unit=" n", disable=not progress, leave=False)
    if threads <= 1:
        if oracle is None or oracle.limit < limit:
            oracle = PrimeOracle.build(limit, with_spf=True)
        validator = SweepValidator(oracle)
        for chunk_values, chunk_suites in chunks:
            monitor.merge(validator.run_chunk(chunk_values, chunk_suites))
            bar.update(len(chunk_values))
    else:
        with ProcessPoolExecutor(max_workers=threads, initializer=_init_worker, initargs=(limit,)) as pool:
            # map keeps submission order, so output does not depend on scheduling
            for (chunk_values, _), outcomes in zip(chunks, pool.map(_run_worker_chunk, chunks)):
                monitor.merge(outcomes)
                bar.update(len(chunk_values))
    bar.close()
    return monitor
