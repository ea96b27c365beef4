from collections import OrderedDict


class FailureMonitor:
    """Tallies sweep outcomes per suite and keeps the first counterexamples"""

    def __init__(self, suites, max_examples=10):
        self.max_examples = max_examples
        self.checked = OrderedDict((suite, 0) for suite in suites)
        self.failed = OrderedDict((suite, 0) for suite in suites)
        self.examples = []

    def record(self, suite, n, problems):
        """Record one checked n; problems is a list of messages, empty on pass"""
        self.checked[suite] += 1
        if problems:
            self.failed[suite] += 1
            for problem in problems:
                if len(self.examples) < self.max_examples:
                    self.examples.append({'suite': suite, 'n': n, 'problem': problem})

    def merge(self, outcomes):
        """Fold in (suite, n, problems) tuples, in the order given"""
        for suite, n, problems in outcomes:
            self.record(suite, n, problems)

    @property
    def all_passed(self):
        return not any(self.failed.values())

    def get_summary(self):
        """Per-suite pass/fail counts"""
        return [
            {
                'suite': suite,
                'checked': checked,
                'passed': checked - self.failed[suite],
                'failed': self.failed[suite],
                'status': 'PASS' if self.failed[suite] == 0 else 'FAIL',
            }
            for suite, checked in self.checked.items()
        ]
