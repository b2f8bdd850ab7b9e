import unittest
from fractions import Fraction

import mpmath as mp

from lhmfperiods.exact import ExactPoint, I
from lhmfperiods.exceptions import DataError, ExceptionalSetError
from lhmfperiods.lhmf import *
from lhmfperiods.modforms import NumericValue
from lhmfperiods.periods import local_polynomial
from lhmfperiods.quadforms import is_on_exceptional_set


def quad_kernel(k, n, w):
    w = mp.mpc(w)
    return mp.quad(lambda y: y ** n / ((1j * y - w) * (1j * y - mp.conj(w)) ** (2 * k - 1)),
                   [0, 1, 10, mp.inf])


class TestIntegrals(unittest.TestCase):

    def test_closed_form(self):
        w = mp.mpc(0.5, 0.5)
        for n, m in ((0, 2), (1, 3), (2, 5)):
            with self.subTest(n=n, m=m):
                direct = mp.quad(lambda y: y ** n * (1j * y - w) ** -m, [0, 1, 10, mp.inf])
                self.assertLess(abs(y_integral_closed_form(n, m, w) - direct), 1e-10)

    def test_closed_form_arguments(self):
        with self.assertRaises(DataError):
            y_integral_closed_form(2, 3, mp.mpc(1, 1))
        with self.assertRaises(DataError):
            y_integral_closed_form(0, 2, mp.mpc(0, 1))

    def test_kernel_regimes(self):
        # partial fractions on both sides of the axis, series near the real line
        for w in (0.3 + 0.2j, -0.5 + 0.3j, 2 + 0.1j, -3 + 0.05j):
            for k, n in ((2, 1), (3, 0), (3, 4)):
                with self.subTest(w=w, k=k, n=n):
                    expected = quad_kernel(k, n, w)
                    self.assertLess(abs(kernel_integral(k, n, w) - expected), 1e-8 * (1 + abs(expected)))

    def test_partial_fractions_phase(self):
        # away from the real line, every parity of n
        for w in (0.3 + 0.2j, -0.4 + 0.6j, 1 + 1j):
            for k, n in ((2, 0), (2, 1), (2, 2), (3, 2), (3, 3), (4, 5)):
                with self.subTest(w=w, k=k, n=n):
                    expected = quad_kernel(k, n, w)
                    self.assertLess(abs(kernel_integral(k, n, w) - expected), 1e-8 * (1 + abs(expected)))

    def test_kernel_on_axis(self):
        with self.assertRaises(DataError):
            kernel_integral(2, 1, 2j)


class TestDirectEvaluation(unittest.TestCase):

    points = (mp.mpc(0.3, 1.3), mp.mpc(0.5, 2), mp.mpc(mp.mpf(1) / 3, 0.75))

    def test_matches_local_polynomial(self):
        for k, n, bound in ((2, 1, 128), (3, 2, 32)):
            for tau in self.points:
                with self.subTest(k=k, n=n, tau=str(tau)):
                    value = eval_H1kn_direct(k, n, tau, bound=bound)
                    self.assertIsInstance(value, NumericValue)
                    self.assertLessEqual(abs(value.value - local_polynomial(k, n, tau)), value.error + 1e-2)

    def test_half_shifted_point(self):
        value = eval_H1kn_direct(2, 1, mp.mpc(0.5, 2), bound=128)
        self.assertLess(abs(value.value - mp.mpf(13) / 4), value.error + 1e-2)

    def test_all_indices_in_one_pass(self):
        tau = self.points[0]
        values = eval_H1kn_direct_many(3, (1, 2, 3), tau, bound=16)
        self.assertEqual(len(values), 3)
        self.assertEqual(values[1], eval_H1kn_direct(3, 2, tau, bound=16))
        sums = direct_sums(3, (1, 2, 3), tau, bound=16)
        self.assertEqual(sums.levels, (16, 8, 4, 2))
        self.assertEqual([level for level, _ in sums.curve(0)], [2, 4, 8, 16])

    def test_extrapolation(self):
        # S(L) = 1 + 8/L is extrapolated exactly
        sums = DirectSums(2, (1, ), (16, 8, 4, 2), [[1.5, 2, 3, 5]], [0j])
        value = sums.extrapolated(0)
        self.assertLess(abs(value.value + 4 / mp.pi), 1e-12)
        self.assertEqual(value.error, 0)

    def test_near_exceptional_set(self):
        with self.assertRaises(ExceptionalSetError):
            eval_H1kn_direct(2, 1, mp.mpc(1e-4, 1), bound=10)

    def test_range(self):
        with self.assertRaises(DataError):
            eval_H1kn_direct(2, 3, mp.mpc(0.3, 1.3), bound=10)
        with self.assertRaises(DataError):
            direct_sums(2, (1, ), mp.mpc(0.3, 1.3), bound=4)


class TestSplitting(unittest.TestCase):

    tau = ExactPoint(Fraction(1, 3), Fraction(9, 16))

    def test_exact_without_eichler_terms(self):
        for k, n in ((2, 1), (3, 2), (4, 3)):
            with self.subTest(k=k, n=n):
                self.assertEqual(splitting_rhs(k, n, self.tau), local_polynomial(k, n, self.tau))

    def test_eisenstein_completion(self):
        value = splitting_rhs(2, 0, self.tau)
        self.assertIsInstance(value, NumericValue)
        self.assertTrue(mp.isfinite(value.error))

    def test_cusp_data_required(self):
        with self.assertRaises(DataError):
            splitting_rhs(6, 2, mp.mpc(0.2, 1.1))


class TestJumps(unittest.TestCase):

    def test_descriptor_at_2i(self):
        report = jump_check(2, 1, ExactPoint(0, 4))
        self.assertEqual(report.descriptor_jump, I * 4)
        self.assertEqual(report.jump, I * 4)
        self.assertTrue(report.passed)
        self.assertTrue(report.to_dict()['passed'])

    def test_other_points(self):
        for k, n in ((2, 1), (3, 2)):
            for tau in (ExactPoint(0, Fraction(1, 4)), ExactPoint(Fraction(-1, 5), Fraction(4, 25))):
                with self.subTest(k=k, n=n, tau=str(tau)):
                    report = jump_check(k, n, tau)
                    self.assertTrue(report.jump_matches)
                    self.assertTrue(report.average_matches)

    def test_side_points(self):
        plus, minus = side_points(ExactPoint(0, 4))
        self.assertNotEqual(plus, minus)
        self.assertFalse(is_on_exceptional_set(plus))
        self.assertFalse(is_on_exceptional_set(minus))

    def test_off_the_set(self):
        with self.assertRaises(DataError):
            singularity_descriptor(2, 1, ExactPoint(Fraction(1, 3), Fraction(9, 16)))


if __name__ == '__main__':
    unittest.main()
