import unittest
from fractions import Fraction
from math import factorial

import mpmath as mp

from lhmfperiods.exact import *
from lhmfperiods.exceptions import DataError, DiscriminantMismatchError
from lhmfperiods.quadforms import GammaMatrix

X = GaussPoly.monomial(1)


class TestExactNumber(unittest.TestCase):

    def test_squarefree(self):
        self.assertEqual(squarefree_decomposition(72), (6, 2))
        self.assertEqual(squarefree_decomposition(1), (1, 1))
        with self.assertRaises(DataError):
            squarefree_decomposition(0)

    def test_sqrt_normalization(self):
        self.assertEqual(ExactNumber.sqrt(12), ExactNumber.sqrt(3) * 2)
        self.assertEqual(ExactNumber.sqrt(Fraction(4, 3)), ExactNumber(x=Fraction(2, 3), radicand=3))
        self.assertEqual(ExactNumber.sqrt(-4), I * 2)
        self.assertTrue(ExactNumber.sqrt(9).is_rational())

    def test_field_arithmetic(self):
        self.assertEqual(I * I, -1)
        root = ExactNumber.sqrt(3)
        value = root + 1
        self.assertEqual(value * value.inverse(), 1)
        self.assertEqual((value * I) / I, value)
        self.assertEqual(value.galois(), 1 - root)
        self.assertEqual((I * root + 2).conjugate(), 2 - I * root)
        with self.assertRaises(ZeroDivisionError):
            value / 0

    def test_discriminant_mismatch(self):
        with self.assertRaises(DiscriminantMismatchError):
            ExactNumber.sqrt(2) + ExactNumber.sqrt(3)
        # rationals mix with any field
        self.assertEqual(ExactNumber.sqrt(2) * 0 + ExactNumber.sqrt(3), ExactNumber.sqrt(3))

    def test_embedding(self):
        a = ExactNumber(Fraction(1, 3), 2, Fraction(-5, 7), 1, radicand=5)
        b = ExactNumber(2, Fraction(1, 2), 3, 0, radicand=5)
        self.assertLess(abs((a * b).to_mpc() - a.to_mpc() * b.to_mpc()), mp.mpf(10) ** (4 - mp.mp.dps))

    def test_parts(self):
        value = ExactNumber(Fraction(1, 2), 0, Fraction(3, 4))
        self.assertEqual(value.real, Fraction(1, 2))
        self.assertEqual(value.imag, Fraction(3, 4))
        self.assertTrue((value - value.real).is_imaginary_rational())
        with self.assertRaises(DataError):
            value.as_fraction()


class TestBernoulli(unittest.TestCase):

    def test_numbers(self):
        self.assertEqual(bernoulli_number(0), 1)
        self.assertEqual(bernoulli_number(1), Fraction(-1, 2))
        self.assertEqual(bernoulli_number(12), Fraction(-691, 2730))
        self.assertEqual(bernoulli_number(13), 0)
        with self.assertRaises(DataError):
            bernoulli_number(-1)

    def test_polynomials(self):
        self.assertEqual(bernoulli_polynomial(1), X - Fraction(1, 2))
        self.assertEqual(bernoulli_polynomial(2), X * X - X + Fraction(1, 6))

    def test_identities(self):
        x = ExactNumber(Fraction(2, 7), 0, Fraction(3, 5))
        for m in range(1, 15):
            with self.subTest(m=m):
                poly = bernoulli_polynomial(m)
                self.assertEqual(poly.shift(1) - poly, GaussPoly.monomial(m - 1, m))
                self.assertEqual(poly(1 - x), poly(x) * (-1) ** m)

    def test_periodized(self):
        self.assertEqual(periodized_bernoulli(2, ExactPoint(Fraction(1, 2), 4)), Fraction(-49, 12))
        shifted = periodized_bernoulli(2, ExactPoint(Fraction(-1, 2), Fraction(3, 4)))
        self.assertEqual(shifted, bernoulli_polynomial(2)(ExactPoint(Fraction(1, 2), Fraction(3, 4))))
        self.assertEqual(periodized_bernoulli(1, ExactPoint(0, 4)), I * 2)
        numeric = periodized_bernoulli(1, mp.mpc(0, 2))
        self.assertLess(abs(numeric - mp.mpc(0, 2)), 1e-12)
        with self.assertRaises(DataError):
            periodized_bernoulli(0, ExactPoint(0, 1))


class TestSlash(unittest.TestCase):

    def test_elementary(self):
        self.assertEqual(slash_poly(GaussPoly({0: 1}), 2, GammaMatrix.S()), X * X)
        self.assertEqual(slash_poly(X, 2, GammaMatrix.T()), X + 1)

    def test_antisymmetric_under_s(self):
        for k in range(2, 6):
            for n in range(2 * k - 1):
                with self.subTest(k=k, n=n):
                    poly = GaussPoly.monomial(n) - GaussPoly.monomial(2 * k - 2 - n, (-1) ** n)
                    self.assertEqual(slash_poly(poly, k, GammaMatrix.S()), -poly)

    def test_degree_violation(self):
        with self.assertRaises(DataError):
            slash_poly(GaussPoly.monomial(3), 2, GammaMatrix.S())


class TestRaising(unittest.TestCase):

    point = ExactPoint(Fraction(1, 2), Fraction(3, 4))

    def test_single_step(self):
        v = MixedExpr({(0, 1): 1})
        self.assertEqual(v.raise_(-2), MixedExpr({(0, 0): -1}))
        self.assertEqual(raise_iterated_symbolic(v, -2, 0), v)

    def test_closed_form_values(self):
        self.assertEqual(raise_monomial_closed_form(2, 1, self.point), -ExactNumber.sqrt(Fraction(4, 3)))
        point = ExactPoint(Fraction(1, 3), Fraction(9, 16))
        self.assertEqual(raise_monomial_closed_form(2, 0, point), Fraction(-8, 3))
        with self.assertRaises(DataError):
            raise_monomial_closed_form(2, 4, point)

    def test_top_exponent_correction(self):
        point = ExactPoint(0, 1)
        value = raise_monomial_closed_form(3, 5, point)
        iterated = raise_iterated_symbolic(MixedExpr.from_tau_power(5), -4, 2).evaluate(point)
        self.assertEqual(value, iterated)

    def test_paths_agree(self):
        points = (self.point, ExactPoint(Fraction(-2, 7), Fraction(5, 9)), ExactPoint(Fraction(3, 11), 2))
        for k in range(2, 5):
            for ell in range(2 * k):
                with self.subTest(k=k, ell=ell):
                    monomial = MixedExpr.from_tau_power(ell)
                    iterated = raise_iterated_symbolic(monomial, 2 - 2 * k, k - 1)
                    self.assertEqual(raise_closed_sum(monomial, k), iterated)
                    for point in points:
                        self.assertEqual(iterated.evaluate(point), raise_monomial_closed_form(k, ell, point))

    def test_raise_polynomial(self):
        poly = X * X * 3 - X + 2
        expected = (raise_monomial_closed_form(2, 2, self.point) * 3
                    - raise_monomial_closed_form(2, 1, self.point)
                    + raise_monomial_closed_form(2, 0, self.point) * 2)
        self.assertEqual(raise_polynomial(poly, 2, self.point), expected)

    def test_gamma_mode_relation(self):
        for k in range(2, 5):
            for n in range(1, 4):
                with self.subTest(k=k, n=n):
                    holomorphic = raise_closed_sum(ExpFourierExpr.e_tau(n), k)
                    self.assertEqual(raise_closed_sum(ExpFourierExpr.gamma_mode(k, n), k),
                                     holomorphic.conj() * factorial(2 * k - 2))

    def test_fourier_paths_agree(self):
        mode = ExpFourierExpr.e_tau(2)
        self.assertEqual(raise_closed_sum(mode, 3), raise_iterated_symbolic(mode, -4, 2))


class TestOmega(unittest.TestCase):

    def test_collapse(self):
        value = OmegaNumber(ExactNumber.coerce(Fraction(1, 2)), ExactNumber.coerce(0), 2)
        self.assertEqual(exact_or_omega(value), Fraction(1, 2))
        value = OmegaNumber(ExactNumber.coerce(0), ExactNumber.coerce(1), 2)
        self.assertLess(abs(to_mpc(value) - omega_value(2)), 1e-12)


class TestExactPoint(unittest.TestCase):

    def test_action(self):
        point = ExactPoint(0, 4)
        image = point.apply(GammaMatrix.S())
        self.assertEqual((image.u, image.v_squared), (0, Fraction(1, 4)))
        self.assertEqual(point.translate(3).u, 3)
        self.assertEqual(point.radicand, 1)

    def test_lower_half_plane(self):
        with self.assertRaises(DataError):
            ExactPoint(0, -1)


if __name__ == '__main__':
    unittest.main()
