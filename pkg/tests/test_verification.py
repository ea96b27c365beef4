import pytest

from verification.monitor import FailureMonitor
from verification.validator import SUITES, SweepValidator, required_limit, run_sweep


def test_required_limit():
    assert required_limit(10, ('kernel',)) == 100
    assert required_limit(99, ('census',)) == 101 ** 2
    assert required_limit(99, ('pisquare',)) == 99 ** 2
    assert required_limit(1001, ('kernel', 'classify')) == 1009


def test_sweep_passes(oracle):
    monitor = run_sweep(301, SUITES, oracle=oracle, progress=False)
    assert monitor.all_passed, monitor.examples
    summary = {row['suite']: row for row in monitor.get_summary()}
    assert summary['kernel']['checked'] == 151
    assert summary['census']['checked'] == 149
    assert summary['pisquare']['checked'] == 150
    assert all(row['status'] == 'PASS' for row in summary.values())


def test_each_check_is_clean(oracle):
    validator = SweepValidator(oracle)
    for n in (5, 11, 37, 113, 189, 297):
        for suite in SUITES:
            assert getattr(validator, f'check_{suite}')(n) == [], (suite, n)


def test_exceptions_become_failures(oracle):
    validator = SweepValidator(oracle)
    outcomes = validator.run_chunk([2_000_001], ('census',))
    suite, n, problems = outcomes[0]
    assert (suite, n) == ('census', 2_000_001)
    assert problems and problems[0].startswith("raised CapacityError")


def test_monitor_keeps_first_ten():
    monitor = FailureMonitor(('kernel',))
    for n in range(1, 30, 2):
        monitor.record('kernel', n, [f"bad {n}"])
    monitor.record('kernel', 31, [])
    assert len(monitor.examples) == 10
    assert monitor.examples[0] == {'suite': 'kernel', 'n': 1, 'problem': "bad 1"}
    assert monitor.get_summary() == [
        {'suite': 'kernel', 'checked': 16, 'passed': 1, 'failed': 15, 'status': 'FAIL'},
    ]
    assert not monitor.all_passed


@pytest.mark.parametrize("threads", [1, 2])
def test_sweep_is_deterministic(threads):
    monitor = run_sweep(999, ('classify', 'factorize'), threads=threads, progress=False)
    assert monitor.get_summary() == [
        {'suite': 'classify', 'checked': 498, 'passed': 498, 'failed': 0, 'status': 'PASS'},
        {'suite': 'factorize', 'checked': 499, 'passed': 499, 'failed': 0, 'status': 'PASS'},
    ]
