import argparse
import logging
import sys

from census.identities import CensusCalculator, Interval, interval_bounds
from classify.gap_test import GapClassifier
from cli.formatting import MODES, OutputFormat, format_rational, json_line, render_rows
from factorize.divisor_scan import DivisorScanner
from kernel.errors import CapacityError, DomainError, InconsistencyError, KernelOverflowError
from kernel.odd_multiples import KernelEngine, ceil_sqrt, f, require_odd
from oracle.sieve import PrimeOracle, configured_limit
from pi_refine.refinement import PiSquareRefiner
from verification.validator import SUITES, required_limit, run_sweep

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3

SUM_INTERVALS = ('full', 'lower', 'upper', 'direct', 'square')
MIN_ORACLE = 100


def build_parser():
    parser = argparse.ArgumentParser(
        prog='oddsieve',
        description="Odd-multiple kernel f(n, x): primality gaps, factorization, "
                    "interval censuses and the refined pi(n^2), checked against a sieve.",
    )
    parser.add_argument('--format', choices=MODES, default='text', help="output mode (default text)")
    parser.add_argument('--digits', type=int, default=5, help="decimal digits for rationals (default 5)")
    parser.add_argument('--limit', type=int, default=None,
                        help="largest oracle to build (default $ODDSIEVE_ORACLE_LIMIT or 10^7)")
    parser.add_argument('-v', '--verbose', action='store_true', help="debug logging on stderr")
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('f', help="smallest odd multiple of x above n")
    p.add_argument('n', type=int)
    p.add_argument('x', type=int)

    p = sub.add_parser('c1', help="smallest odd composite above n and its gap")
    p.add_argument('n', type=int)

    p = sub.add_parser('classify', help="gap test for an odd m >= 7")
    p.add_argument('m', type=int)

    p = sub.add_parser('divisors', help="solutions of f(n - 2, x) = n")
    p.add_argument('n', type=int)
    p.add_argument('--primes-only', action='store_true', help="only the prime solutions")
    p.add_argument('--table', action='store_true', help="CSV of n, x_i, residual for every scanned x")
    p.add_argument('--bounded', action='store_true', help="scan x <= ceil(sqrt(n)) and divide for cofactors")

    p = sub.add_parser('isprime', help="two-solution primality test")
    p.add_argument('n', type=int)

    for name, help_text in (('sumrecip', "sum of 1/p over odd primes p <= n"),
                            ('census', "full census record of one interval")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument('n', type=int)
        choices = SUM_INTERVALS if name == 'sumrecip' else [i.value for i in Interval]
        p.add_argument('--interval', choices=choices, default='full')

    p = sub.add_parser('table', help="census identity for every odd n in a range")
    p.add_argument('--from', dest='start', type=int, default=5)
    p.add_argument('--to', dest='stop', type=int, required=True)

    p = sub.add_parser('pisquare', help="refined odd-prime count up to n^2")
    p.add_argument('n', type=int)

    p = sub.add_parser('verify', help="sweep the property suites against the oracle")
    p.add_argument('--max', dest='max_n', type=int, required=True)
    p.add_argument('--suite', choices=SUITES + ('all',), default='all')
    p.add_argument('--threads', type=int, default=1, help="worker processes (default 1)")
    p.add_argument('--no-progress', action='store_true', help="hide the progress bar")
    return parser


class NumberTheoryCLI:
    """Runs one parsed command and writes its result to stdout"""

    def __init__(self, args, out=None):
        self.args = args
        self.fmt = OutputFormat(mode=args.format, decimal_digits=args.digits)
        self.limit = args.limit if args.limit is not None else configured_limit()
        self.out = out or sys.stdout

    def emit(self, text):
        print(text, file=self.out)

    def oracle(self, required):
        """Oracle reaching at least `required`, within the configured limit"""
        required = max(required, MIN_ORACLE)
        if required > self.limit:
            raise CapacityError(f"this command needs an oracle up to {required}, "
                                f"above the configured limit {self.limit}")
        return PrimeOracle.build(required)

    def run(self):
        return getattr(self, f"cmd_{self.args.command}")()

    def cmd_f(self):
        n, x = self.args.n, self.args.x
        value = f(n, x)
        if self.fmt.mode == 'json':
            self.emit(json_line({'n': n, 'x': x, 'f': value}))
        else:
            self.emit(f"f({n}, {x}) = {value}")
        return EXIT_OK

    def cmd_c1(self):
        n = require_odd(self.args.n, 'n', minimum=5)
        kernel = KernelEngine(self.oracle(ceil_sqrt(n)))
        window = kernel.prime_window(n)
        values = kernel.window_values(n)
        c1 = values[0]
        if self.fmt.mode == 'json':
            self.emit(json_line({'n': n, 'c1': c1, 'gap': c1 - n,
                                 'window': list(window.primes), 'values': values}))
        else:
            self.emit(f"c1 = {c1} (gap {c1 - n}) over n = {n}")
            self.emit(f"window: {', '.join(map(str, window.primes))}")
            self.emit(f"f(n, p): {', '.join(map(str, values))}")
        return EXIT_OK

    def cmd_classify(self):
        m = require_odd(self.args.m, 'm', minimum=7)
        result = GapClassifier(self.oracle(ceil_sqrt(m))).classify_number(m)
        if self.fmt.mode == 'json':
            self.emit(json_line(result.to_dict()))
        else:
            self.emit(result.describe())
        return EXIT_OK

    def cmd_divisors(self):
        n = require_odd(self.args.n, 'n', minimum=3)
        scanner = DivisorScanner(self.oracle(MIN_ORACLE), scan_limit=self.limit)
        if self.args.table:
            rows = [{'n': row[0], 'x_i': row[1], 'residual': row[2]}
                    for row in scanner.residual_table(n, bounded=self.args.bounded)]
            self.emit(render_rows(rows, OutputFormat('csv', self.fmt.decimal_digits)))
            return EXIT_OK

        scan = scanner.odd_divisors(n, bounded=self.args.bounded)
        values = scan.prime_solutions if self.args.primes_only else scan.solutions
        if self.fmt.mode == 'json':
            self.emit(json_line(scan.to_dict()))
        elif self.fmt.mode == 'csv':
            self.emit(render_rows([{'n': n, 'x': x} for x in values], self.fmt))
        else:
            self.emit(", ".join(map(str, values)))
        return EXIT_OK

    def cmd_isprime(self):
        n = require_odd(self.args.n, 'n', minimum=3)
        scan = DivisorScanner(self.oracle(MIN_ORACLE), scan_limit=self.limit).odd_divisors(n)
        if self.fmt.mode == 'json':
            self.emit(json_line({'n': n, 'prime': scan.is_prime, 'solutions': list(scan.solutions)}))
        else:
            verdict = "prime" if scan.is_prime else "not prime"
            self.emit(f"{verdict} ({len(scan.solutions)} solutions: {', '.join(map(str, scan.solutions))})")
        return EXIT_OK

    def _census_limit(self, n, which):
        if which == 'direct':
            return n
        if which == 'square':
            return n * n
        return interval_bounds(n, which)[1]

    def cmd_sumrecip(self):
        which = self.args.interval
        n = require_odd(self.args.n, 'n', minimum=3 if which in ('direct', 'square') else 5)
        oracle = self.oracle(self._census_limit(n, which))
        digits = self.fmt.decimal_digits

        if which == 'square':
            value = PiSquareRefiner(oracle).sum_recip_square(n)
            payload, lines = {'n': n, 'interval': which, 'sum_recip': value}, []
        elif which == 'direct':
            value = CensusCalculator(oracle).direct_sum_recip(n)
            payload, lines = {'n': n, 'interval': which, 'sum_recip': value}, []
        else:
            record = CensusCalculator(oracle).census(n, which)
            value = record.sum_recip()
            payload = {'n': n, 'interval': which, 'sum_recip': value, 'dup': record.dup,
                       'c_sum': record.c_sum, 'pi_diff': record.pi_diff, 'epsilon': record.epsilon,
                       'a': record.a, 'b': record.b}
            lines = [
                f"  • dup = {record.dup}",
                f"  • pi(L) = {record.pi_diff}",
                f"  • sum C = {format_rational(record.c_sum, digits)}",
                f"  • b - a = {record.b - record.a}",
                f"  • epsilon = {record.epsilon}",
            ]

        if self.fmt.mode == 'json':
            self.emit(json_line(payload, digits))
        elif self.fmt.mode == 'csv':
            self.emit(render_rows([payload], self.fmt))
        else:
            self.emit(f"sum 1/p over odd primes p <= {n} ({which}) = {format_rational(value, digits)}")
            for line in lines:
                self.emit(line)
        return EXIT_OK

    def cmd_census(self):
        n = require_odd(self.args.n, 'n', minimum=5)
        which = self.args.interval
        record = CensusCalculator(self.oracle(interval_bounds(n, which)[1])).census(n, which)
        if self.fmt.mode == 'json':
            self.emit(json_line(record.to_dict(), self.fmt.decimal_digits))
            return EXIT_OK

        if self.fmt.mode == 'csv':
            row = {'n': n, 'interval': which, 'a': record.a, 'b': record.b}
            row.update({f'count_{p}': c for p, c in record.per_prime_counts.items()})
            row.update({'dup': record.dup, 'c_sum': record.c_sum, 'pi_diff': record.pi_diff,
                        'epsilon': record.epsilon, 'sum_recip': record.sum_recip()})
            self.emit(render_rows([row], self.fmt))
            return EXIT_OK

        rows = [{'p': p, 'count': c} for p, c in record.per_prime_counts.items()]
        self.emit(f"census of ({record.a}, {record.b}] against odd primes <= {n}")
        self.emit(render_rows(rows, self.fmt))
        self.emit(f"  • sum of counts = {record.multiples_total}")
        self.emit(f"  • dup = {record.dup}")
        self.emit(f"  • pi(L) = {record.pi_diff}")
        self.emit(f"  • epsilon = {record.epsilon}")
        self.emit(f"  • sum C = {format_rational(record.c_sum, self.fmt.decimal_digits)}")
        self.emit(f"  • odd integers = {record.counted_odd} counted, {record.expected_odd} expected")
        return EXIT_OK

    def cmd_table(self):
        start = require_odd(self.args.start, 'from', minimum=5)
        stop = require_odd(self.args.stop, 'to', minimum=start)
        rows = CensusCalculator(self.oracle((stop + 2) ** 2)).census_table(start, stop)
        self.emit(render_rows(rows, self.fmt))
        return EXIT_OK if all(row['match'] for row in rows) else EXIT_VERIFY_FAILED

    def cmd_pisquare(self):
        n = require_odd(self.args.n, 'n', minimum=3)
        report = PiSquareRefiner(self.oracle(n * n)).odd_prime_count_square(n)
        digits = self.fmt.decimal_digits
        if self.fmt.mode == 'json':
            self.emit(json_line(report.to_dict(), digits))
        elif self.fmt.mode == 'csv':
            self.emit(render_rows([{'n': n, 'dup': report.dup, 'b_sum': report.b_sum,
                                    'sum_recip': report.sum_recip,
                                    'odd_prime_count': report.odd_prime_count,
                                    'standard_count': report.standard_count}], self.fmt))
        else:
            self.emit(f"pi({n}^2): odd-only {report.odd_prime_count}, standard {report.standard_count}")
            self.emit(f"  • dup = {report.dup}")
            self.emit(f"  • sum B = {format_rational(report.b_sum, digits)}")
            self.emit(f"  • sum 1/p = {format_rational(report.sum_recip, digits)}")
        return EXIT_OK

    def cmd_verify(self):
        max_n = self.args.max_n
        if max_n < 5:
            raise DomainError(f"--max must be at least 5, got {max_n}")
        suites = SUITES if self.args.suite == 'all' else (self.args.suite,)
        needed = required_limit(max_n, suites)
        if needed > self.limit:
            raise CapacityError(f"verifying up to {max_n} needs an oracle up to {needed}, "
                                f"above the configured limit {self.limit}")

        monitor = run_sweep(max_n, suites, threads=max(self.args.threads, 1),
                            progress=not self.args.no_progress)
        self.emit(render_rows(monitor.get_summary(), self.fmt))
        if monitor.examples:
            if self.fmt.mode == 'text':
                self.emit("first counterexamples:")
            self.emit(render_rows(monitor.examples, self.fmt))
        return EXIT_OK if monitor.all_passed else EXIT_VERIFY_FAILED


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return NumberTheoryCLI(args).run()
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapacityError, KernelOverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except InconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
