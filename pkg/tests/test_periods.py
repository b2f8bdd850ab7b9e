import unittest
from fractions import Fraction

import mpmath as mp

from lhmfperiods.config import DEFAULT_CONFIG
from lhmfperiods.exact import ExactNumber, ExactPoint, I, OmegaNumber
from lhmfperiods.exceptions import DataError, ExceptionalSetError, KernelError, UnsupportedError
from lhmfperiods.modforms import delta_coeffs, eisenstein_coeffs
from lhmfperiods.periods import *
from lhmfperiods.quadforms import GammaMatrix, QuadForm

HEXAGONAL = QuadForm(1, 1, 1)

EXACT_PERIODS = {
    (2, 1): Fraction(-2),
    (3, 1): Fraction(-3, 2),
    (3, 3): Fraction(3, 2),
    (4, 1): Fraction(-20, 9),
    (4, 3): Fraction(2, 3),
    (5, 1): Fraction(-49, 12),
    (7, 3): Fraction(7, 5),
    (7, 5): Fraction(-1, 2),
}


class TestExactPeriods(unittest.TestCase):

    def test_values(self):
        for (k, n), value in EXACT_PERIODS.items():
            with self.subTest(k=k, n=n):
                result = exact_period(HEXAGONAL, k, n)
                self.assertEqual(result.exact, value)
                self.assertEqual(result.method['path'], EXACT)

    def test_symmetry(self):
        for k in (2, 3, 4):
            for n in range(1, 2 * k - 2):
                with self.subTest(k=k, n=n):
                    here = exact_period(HEXAGONAL, k, n).exact
                    there = exact_period(HEXAGONAL, k, 2 * k - 2 - n).exact
                    self.assertEqual(here, there * (-1) ** k)

    def test_parity_field(self):
        for k in (2, 3, 4):
            for n in range(1, 2 * k - 2):
                with self.subTest(k=k, n=n):
                    plus, minus = period_plusminus(exact_period(QuadForm(2, 2, 3), k, n))
                    self.assertEqual(minus if n % 2 else plus, 0)

    def test_class_representative(self):
        self.assertEqual(exact_period(QuadForm(1, 5, 7), 3, 1).exact, Fraction(-3, 2))

    def test_cusp_space_needs_data(self):
        with self.assertRaises(UnsupportedError):
            exact_period(HEXAGONAL, 6, 1)

    def test_outer_index_is_numeric(self):
        result = exact_period(HEXAGONAL, 2, 0)
        self.assertIsNone(result.exact)
        self.assertLess(abs(result.value().real - outer_period_identity(HEXAGONAL, 2).value.real), 1e-6)

    def test_range(self):
        with self.assertRaises(DataError):
            exact_period(HEXAGONAL, 2, 3)
        with self.assertRaises(DataError):
            exact_period(HEXAGONAL, 1, 0)


class TestKohnenZagier(unittest.TestCase):

    def test_dimension(self):
        self.assertEqual([cusp_form_dimension(w) for w in (2, 4, 12, 14, 24, 26)], [0, 0, 1, 0, 2, 1])

    def test_trivial_cusp_space(self):
        for k in (2, 3, 4, 5, 7):
            for n in range(2 * k - 1):
                with self.subTest(k=k, n=n):
                    self.assertTrue(kz_period_polynomial(k, n).is_zero())

    def test_gram_symmetry(self):
        for n in range(0, 11, 2):
            for m in range(1, 10, 2):
                with self.subTest(n=n, m=m):
                    self.assertEqual(kz_periods(6, n)[m], kz_periods(6, m)[n])

    def test_parts(self):
        poly = kz_period_polynomial(6, 1)
        self.assertIsNone(poly.odd)
        self.assertFalse(poly.is_zero())
        with self.assertRaises(DataError):
            _ = poly.polynomial


class TestEisenstein(unittest.TestCase):

    def test_exact_periods(self):
        self.assertEqual(eisenstein_period_exact(3, 2), 0)
        self.assertIsInstance(eisenstein_period_exact(2, 0), OmegaNumber)
        self.assertTrue(eisenstein_period_exact(4, 3).is_rational())

    def test_cocycle(self):
        e4 = eisenstein_coeffs(2, 40)
        for tau in (mp.mpc(0.3, 1.1), mp.mpc(-0.2, 0.9)):
            with self.subTest(tau=str(tau)):
                residual = eichler_cocycle_residual(e4, eisenstein_period_function(2), tau)
                self.assertLess(abs(residual.value), 1e-10 + residual.error)


class TestLocalPolynomial(unittest.TestCase):

    points = (ExactPoint(Fraction(1, 3), Fraction(9, 16)),
              ExactPoint(Fraction(2, 7), Fraction(3, 4)),
              ExactPoint(Fraction(-5, 4), Fraction(1, 5)))

    def test_representations_agree(self):
        for k in (2, 3):
            for n in range(2 * k - 1):
                for tau in self.points:
                    with self.subTest(k=k, n=n, tau=str(tau)):
                        self.assertEqual(local_polynomial(k, n, tau, THEOREM), local_polynomial(k, n, tau, LEMMA))

    def test_numeric_embedding(self):
        tau = self.points[0]
        exact = local_polynomial(2, 1, tau)
        self.assertLess(abs(exact.to_mpc() - local_polynomial(2, 1, tau.to_mpc())), 1e-10)

    def test_cocycles(self):
        for k in (2, 3):
            for n in range(2 * k - 1):
                for tau in self.points[:2]:
                    with self.subTest(k=k, n=n, tau=str(tau)):
                        self.assertEqual(local_polynomial_cocycle(k, n, tau, GammaMatrix.T()), 0)
                        self.assertEqual(local_polynomial_cocycle(k, n, tau, GammaMatrix.S()),
                                         expected_s_cocycle(k, n, tau))

    def test_one_sided_off_the_set(self):
        for tau in self.points:
            with self.subTest(tau=str(tau)):
                self.assertEqual(one_sided_polynomial(3, 2, tau, tau), local_polynomial(3, 2, tau))
        with self.assertRaises(ExceptionalSetError):
            one_sided_polynomial(2, 1, ExactPoint(0, 1), ExactPoint(0, 1))

    def test_raised_value(self):
        self.assertEqual(raised_local_polynomial(2, 1, HEXAGONAL), ExactNumber.sqrt(3) * 2)
        self.assertEqual(raised_local_polynomial(2, 1, QuadForm(1, -1, 1)), ExactNumber.sqrt(3) * 2)

    def test_unknown_representation(self):
        with self.assertRaises(DataError):
            local_polynomial(2, 1, self.points[0], 'corollary')


class TestCombinations(unittest.TestCase):

    def test_cohen_combination(self):
        self.assertEqual(linear_combination_period(HEXAGONAL, 6, {1: 10, 3: -24, 5: 6}), -108)

    def test_relations_in_kernel(self):
        for j in range(11):
            relation = cohen_relation(6, j)
            with self.subTest(j=j):
                if relation:
                    self.assertTrue(kernel_residual(6, relation).is_zero())

    def test_not_in_kernel(self):
        with self.assertRaises(KernelError) as context:
            linear_combination_period(HEXAGONAL, 6, {1: 1})
        self.assertFalse(context.exception.residual.is_zero())

    def test_invalid_combinations(self):
        for coeffs in ({}, {1: 0}, {1: 1, 2: 1}, {0: 1}):
            with self.subTest(coeffs=coeffs):
                with self.assertRaises(DataError):
                    linear_combination_period(HEXAGONAL, 6, coeffs)

    def test_trivial_space_combination(self):
        value = linear_combination_period(HEXAGONAL, 3, {1: 2, 3: 1})
        self.assertEqual(value, Fraction(-3, 2))

    def test_cohen_series_vanishes(self):
        value = cohen_series(3, 1, mp.mpc(0.1, 1.1), bound=40)
        self.assertLess(abs(value.value), 1e-2)
        with self.assertRaises(DataError):
            cohen_series(3, 0, mp.mpc(0.1, 1.1))


class TestCuspForms(unittest.TestCase):

    def test_basis(self):
        self.assertEqual(cusp_basis_form(6, 10).coefficients, delta_coeffs(10).coefficients)
        self.assertEqual(cusp_basis_form(8, 5).coeff(1), 1)
        with self.assertRaises(UnsupportedError):
            cusp_basis_form(12)

    def test_delta_norm(self):
        norm = petersson_norm(delta_coeffs(30))
        self.assertLess(abs(norm.value.real / mp.mpf('1.0353620568e-6') - 1), 1e-8)

    def test_numeric_period_l_values(self):
        # r_n(Delta) = n! (2 pi)^(-n-1) L(Delta, n+1), absolutely convergent for n >= 6
        delta = delta_coeffs(60)
        series = delta_coeffs(200)
        for n in (9, 10):
            with self.subTest(n=n):
                l_value = mp.fsum(int(series.coeff(m)) * mp.mpf(m) ** -(n + 1) for m in range(1, 201))
                expected = mp.factorial(n) / (2 * mp.pi) ** (n + 1) * l_value
                value = numeric_period(series_evaluator(delta), 6, n)
                self.assertLess(abs(value.value.real / expected - 1), 1e-6)
                self.assertLess(abs(value.value.imag), 1e-12)

    def test_rn_coefficients(self):
        series, scale = rn_coefficients(6, 1, order=30)
        delta = delta_coeffs(30)
        period = numeric_period(series_evaluator(delta), 6, 1).value.real
        norm = petersson_norm(delta).value.real
        self.assertLess(abs(scale.value.real * norm / period - 1), 1e-8)
        self.assertLess(abs(series.coeff(2) + 24 * scale.value.real), 1e-12 * abs(scale.value.real) * 24)
        with self.assertRaises(UnsupportedError):
            rn_coefficients(12, 1)


class TestEpstein(unittest.TestCase):

    def test_closed_value(self):
        target = 8 * mp.pi ** 3 * mp.zeta(3) / (27 * mp.sqrt(3))
        self.assertLess(abs(epstein_zeta(HEXAGONAL, 3).value / target - 1), 1e-12)

    def test_class_number_one(self):
        for d, form in ((-3, HEXAGONAL), (-4, QuadForm(1, 0, 1)), (-7, QuadForm(1, 1, 2))):
            for s in (2, 3):
                with self.subTest(d=d, s=s):
                    reference = epstein_class_number_one(d, s)
                    self.assertLess(abs(epstein_zeta(form, s).value / reference - 1), 1e-12)
        self.assertIsNone(epstein_class_number_one(-20, 2))

    def test_shells(self):
        shells = epstein_zeta(HEXAGONAL, 3, SHELLS, radius=60)
        self.assertLess(abs(shells.value - epstein_zeta(HEXAGONAL, 3).value), shells.error)

    def test_invalid(self):
        with self.assertRaises(DataError):
            epstein_zeta(HEXAGONAL, 1)
        with self.assertRaises(DataError):
            epstein_zeta(HEXAGONAL, 2, 'lattice')

    def test_outer_identity(self):
        for k, form in ((2, HEXAGONAL), (3, HEXAGONAL), (2, QuadForm(2, 2, 3))):
            with self.subTest(k=k, form=str(form)):
                identity = outer_period_identity(form, k).value.real
                formula = outer_period_formula(form, k).value.real
                self.assertLess(abs(formula / identity - 1), 1e-6)
        self.assertLess(abs(outer_period_identity(HEXAGONAL, 2).value.real + mp.mpf('2.05670')), 1e-5)


class TestOrchestration(unittest.TestCase):

    def test_record(self):
        result = PeriodResult(3, 1, HEXAGONAL, exact=ExactNumber.coerce(Fraction(-3, 2)))
        self.assertEqual(result.mirror, 3)
        self.assertEqual(result.name, '[1,1,1]')
        record = result.to_dict(DEFAULT_CONFIG)
        self.assertEqual(record['exact'], {'kind': 'rational', 'value': '-3/2'})
        self.assertEqual(record['digest'], DEFAULT_CONFIG.digest())
        self.assertIsNone(result.mismatch())
        self.assertEqual(exact_record(I * Fraction(1, 2))['kind'], 'i-rational')

    def test_modes(self):
        with self.assertRaises(DataError):
            compute_period(HEXAGONAL, 2, 1, mode='fast')
        with self.assertRaises(UnsupportedError):
            compute_period(HEXAGONAL, 8, 1, DEFAULT_CONFIG.replace(k_max=7), EXACT)
        self.assertEqual(compute_period(HEXAGONAL, 4, 3, mode=EXACT).exact, Fraction(2, 3))

    def test_exceptional_set(self):
        with self.assertRaises(ExceptionalSetError):
            admissible_point(QuadForm(1, 0, 5))
        with self.assertRaises(ExceptionalSetError):
            class_sum_period(-20, 2, 1, mode=EXACT)

    def test_skip_inadmissible(self):
        rows = class_sum_period(-20, 2, 1, mode=EXACT, skip_inadmissible=True)
        self.assertEqual([row.form for row in rows], [QuadForm(2, 2, 3)])

    def test_class_sum(self):
        rows = class_sum_period(-3, 3, 1, mode=EXACT)
        self.assertEqual(len(rows), 2)
        self.assertEqual(rows[-1].name, 'sum(d=-3)')
        self.assertEqual(rows[-1].exact, Fraction(-3, 2))
        self.assertEqual(rows[-1].to_dict()['form'], 'sum(d=-3)')

    def test_numeric_matches_exact(self):
        result = compute_period(HEXAGONAL, 2, 1, DEFAULT_CONFIG, BOTH)
        self.assertEqual(result.method['orbit_bound'], 10000)
        self.assertLess(result.numeric.error, 2e-4)
        self.assertLess(abs(result.numeric.value - (-2)), 2e-4)
        self.assertTrue(result.numeric.agrees(-2))

    def test_numeric_error_bounds(self):
        for k, n in ((2, 0), (3, 1), (7, 1), (7, 0)):
            with self.subTest(k=k, n=n):
                result = numeric_fkp_period(HEXAGONAL, k, n, DEFAULT_CONFIG)
                self.assertLess(result.numeric.error, 2e-4)


if __name__ == '__main__':
    unittest.main()
