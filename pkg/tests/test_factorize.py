import pytest

from factorize.divisor_scan import DivisorScanner
from kernel.errors import CapacityError, DomainError


@pytest.fixture
def scanner(small_oracle):
    return DivisorScanner(small_oracle)


@pytest.mark.parametrize("n, x, expected", [
    (15015, 7, True),
    (15015, 9, False),
    (7663, 79, True),
    (7663, 1, True),
    (139, 1, True),
])
def test_divisor_test(scanner, n, x, expected):
    assert scanner.divisor_test(n, x) is expected


def test_divisor_test_rejects_even(scanner):
    with pytest.raises(DomainError):
        scanner.divisor_test(15014, 7)


@pytest.mark.parametrize("n, solutions", [
    (7663, (1, 79, 97, 7663)),
    (3913, (1, 7, 13, 43, 91, 301, 559, 3913)),
    (139, (1, 139)),
])
def test_odd_divisors(scanner, n, solutions):
    assert scanner.odd_divisors(n).solutions == solutions


def test_odd_divisors_of_15015(scanner, small_oracle):
    scan = scanner.odd_divisors(15015)
    assert scan.solutions[:8] == (1, 3, 5, 7, 11, 13, 15, 21)
    assert list(scan.solutions) == small_oracle.divisors(15015)
    assert len(scan.solutions) == 32
    assert scan.prime_solutions == (3, 5, 7, 11, 13)
    assert scan.omega_weak == 5


@pytest.mark.parametrize("n", [15015, 7663, 3913, 139, 9, 3, 1521])
def test_bounded_scan_recovers_cofactors(scanner, n):
    bounded = scanner.odd_divisors(n, bounded=True)
    assert bounded.bounded
    assert bounded.solutions == scanner.odd_divisors(n).solutions


@pytest.mark.parametrize("n, expected", [(139, True), (3913, False), (9, False), (3, True)])
def test_is_prime_by_solution_count(scanner, n, expected):
    assert scanner.is_prime_by_solution_count(n) is expected


def test_residual_table_rows(scanner):
    rows = scanner.residual_table(15015)
    assert rows[0] == (15015, 1, 0)
    by_x = {x: residual for _, x, residual in rows}
    assert by_x[7] == 0
    assert by_x[9] == 6
    assert len(rows) == 15015 // 2 + 1
    assert {x for x, r in by_x.items() if r == 0} == set(scanner.odd_divisors(15015).solutions)


@pytest.mark.parametrize("k, bound, m", [(135, 11, 2), (169, 11, 0), (1443, 37, 3), (1495, 37, 3), (165, 11, 3)])
def test_distinct_prime_factors_up_to(scanner, k, bound, m):
    assert scanner.distinct_prime_factors_up_to(k, bound) == m


def test_solutions_are_divisors_exhaustively(oracle):
    scanner = DivisorScanner(oracle)
    for n in range(3, 10_001, 2):
        scan = scanner.odd_divisors(n)
        assert list(scan.solutions) == oracle.divisors(n), n
        assert scan.is_prime == oracle.is_prime(n)
        assert scan.omega_weak == oracle.omega(n)
        assert scanner.distinct_prime_factors_up_to(n, n) == oracle.omega(n)


def test_divisor_test_is_divisibility(small_oracle):
    scanner = DivisorScanner(small_oracle)
    for n in range(3, 2002, 2):
        for x in range(1, n + 1, 2):
            assert scanner.divisor_test(n, x) == (n % x == 0)


def test_scan_in_small_blocks_matches(small_oracle, monkeypatch):
    whole = DivisorScanner(small_oracle).odd_divisors(15015)
    monkeypatch.setattr('factorize.divisor_scan.SCAN_BLOCK', 7)
    scanner = DivisorScanner(small_oracle)
    blocked = scanner.odd_divisors(15015)
    assert blocked.solutions == whole.solutions
    assert blocked.scanned == 7508
    assert len(scanner.residual_table(15015)) == 7508
    assert scanner.odd_divisors(7663, bounded=True).solutions == (1, 79, 97, 7663)


def test_full_scan_above_scan_limit_is_refused(small_oracle):
    scanner = DivisorScanner(small_oracle, scan_limit=1_000)
    with pytest.raises(CapacityError, match="--bounded"):
        scanner.odd_divisors(1009)
    with pytest.raises(CapacityError):
        scanner.residual_table(1009)
    assert scanner.odd_divisors(1009, bounded=True).is_prime


def test_bounded_scan_of_large_n(small_oracle):
    n = 10 ** 13 + 1
    scan = DivisorScanner(small_oracle).odd_divisors(n, bounded=True)
    assert 11 in scan.solutions
    assert scan.solutions[0] == 1 and scan.solutions[-1] == n
    assert all(n % x == 0 and n // x in scan.solutions for x in scan.solutions)
