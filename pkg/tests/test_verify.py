import random
import unittest

import mpmath as mp

from lhmfperiods.exceptions import DataError
from lhmfperiods.lhmf import direct_sums
from lhmfperiods.modforms import NumericValue
from lhmfperiods.quadforms import is_on_exceptional_set
from lhmfperiods.verify import *


class TestSuites(unittest.TestCase):

    def test_quick_suites(self):
        for suite in ('raising', 'kz-zero', 'polynomial-reps', 'jumps', 'exact'):
            with self.subTest(suite=suite):
                reports = run_suites(suite, quick=True)
                self.assertEqual([report.suite for report in reports], [suite])
                report = reports[0]
                self.assertTrue(report.checks)
                self.assertEqual(report.failures, [], [check.to_dict() for check in report.failures])

    def test_report(self):
        report = run_suites('kz-zero', quick=True)[0]
        document = report.to_dict()
        self.assertTrue(document['passed'])
        self.assertEqual(len(document['checks']), len(report.checks))

    def test_kernel_series_checks(self):
        report = run_suites('kz-zero', quick=True)[0]
        names = [check.name for check in report.checks if check.name.startswith('R_')]
        self.assertIn('R_1 series at (0.3 + 1.1j), k=3', names)
        self.assertEqual(report.failures, [])

    def test_quick_splitting(self):
        report = run_suites('splitting', quick=True)[0]
        direct = [check for check in report.checks if check.name.startswith('H_(')]
        # k=2 (n=1) and k=3 (n=1,2,3) at two points
        self.assertEqual(len(direct), 8)
        self.assertEqual(report.failures, [], [check.to_dict() for check in report.failures])

    def test_shell_estimate_check(self):
        tau = mp.mpc(0.3, 1.3)
        sums = direct_sums(2, (1, ), tau, 16)
        check = Verifier()._shell_estimate_check(sums, 0, tau)
        self.assertIn(check.tolerance, (DIRECT_TOLERANCE, DIRECT_DOWNGRADE))
        self.assertEqual(check.detail['downgraded'], check.tolerance == DIRECT_DOWNGRADE)
        self.assertEqual([level for level, _ in check.detail['curve']], [2, 4, 8, 16])
        self.assertTrue(check.name.endswith('B=16'))

    def test_unknown_suite(self):
        with self.assertRaises(DataError):
            run_suites('everything')


class TestChecks(unittest.TestCase):

    def test_exact_check(self):
        self.assertTrue(exact_check('equal', 2, 2).passed)
        self.assertFalse(exact_check('differ', 2, 3).passed)

    def test_numeric_check(self):
        self.assertTrue(numeric_check('close', 1, 1 + 1e-9, 1e-8).passed)
        self.assertFalse(numeric_check('far', 1, 1.1, 1e-8).passed)
        check = numeric_check('slack', 1, NumericValue(1.5, 0.6), 0, slack=0.6)
        self.assertTrue(check.passed)
        self.assertEqual(check.detail['error'], 0.6)
        self.assertTrue(numeric_check('relative', 1000, 1001, 1e-2, relative=True).passed)

    def test_random_points(self):
        rng = random.Random(7)
        for point in random_cm_points(rng, 5) + random_points(rng, 5):
            self.assertFalse(is_on_exceptional_set(point))


if __name__ == '__main__':
    unittest.main()
