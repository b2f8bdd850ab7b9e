"""
The locally harmonic Maass forms H_(1-k,n): evaluation from the defining
Gamma-sum with closed form y-integrals, the splitting into the locally
polynomial part and Eichler integrals, and the jump structure along the
exceptional set
(C) 2023 Yaroshenko Dmytro (https://github.com/o-murphy)

This program is free software; you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation; either version 3 of the License, or
(at your option) any later version.

This program is distributed in the hope that it will be useful,
but WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
GNU General Public License for more details.

You should have received a copy of the GNU General Public License
along with this program; if not, write to the Free Software
Foundation, Inc., 59 Temple Place, Suite 330, Boston, MA  02111-1307  USA
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import List, Optional, Sequence, Tuple

import mpmath as mp

from lhmfperiods.exact import I, ExactNumber, ExactPoint, GaussPoly, exact_or_omega, to_mpc
from lhmfperiods.exceptions import DataError, ExceptionalSetError
from lhmfperiods.logger import logger
from lhmfperiods.modforms import (FourierSeries, NumericValue, as_point, eichler_holomorphic,
                                  eichler_nonholomorphic, eisenstein_coeffs)
from lhmfperiods.periods import cusp_form_dimension, local_polynomial, one_sided_polynomial
from lhmfperiods.quadforms import (BOUNDARY, GammaMatrix, bounded_rows, enumerate_exceptional_matrices,
                                   is_on_exceptional_set, near_exceptional_set, t_window)

_logger = logger.getChild('lhmf')

SERIES_RATIO = 0.5
SERIES_TERMS = 80
JUMP_EPSILON = Fraction(1, 10 ** 6)
EPSILON_LADDER = tuple(Fraction(1, 10 ** e) for e in range(2, 7))


def _check_range(k: int, n: int) -> None:
    if k < 2:
        raise DataError(f"weight parameter k must be at least 2, got {k}")
    if not 0 <= n <= 2 * k - 2:
        raise DataError(f"index n must lie in 0..{2 * k - 2}, got {n}")


def y_integral_closed_form(n: int, m: int, w) -> mp.mpc:
    """int_0^oo y^n (iy - w)^-m dy = (-1)^m i^(n+1) n! (m-n-2)!/(m-1)! w^(n+1-m)"""
    if n < 0 or m < n + 2:
        raise DataError(f"the y-integral needs 0 <= n and m >= n + 2, got n={n}, m={m}")
    w = mp.mpc(w)
    if w.real == 0 and w.imag >= 0:
        raise DataError(f"w = {w} lies on the closed positive imaginary axis")
    coefficient = mp.mpf(factorial(n) * factorial(m - n - 2)) / factorial(m - 1)
    return (-1) ** m * mp.mpc(0, 1) ** (n + 1) * coefficient * w ** (n + 1 - m)


def _y_integral(n: int, m: int, w: complex) -> complex:
    return ((-1) ** m * 1j ** (n + 1) * factorial(n) * factorial(m - n - 2) / factorial(m - 1)
            * w ** (n + 1 - m))


def _kernel_partial_fractions(k: int, n: int, w: complex) -> complex:
    # numerator expanded in x = iy, y^n = (-i)^n x^n
    m = 2 * k - 1
    wb = w.conjugate()
    delta = w - wb
    # simple poles: A (1/(iy - w) - 1/(iy - conj w)), A = w^n/delta^m
    total = w ** n / delta ** m * (-2 * math.atan(w.imag / w.real))
    for j in range(2, m + 1):
        r = m - j
        g = -sum(comb(n, s) * wb ** (n - s) * delta ** (s - r - 1) for s in range(min(n, r) + 1))
        total += g * _y_integral(0, j, wb)
    return (-1j) ** n * total


def _kernel_series(k: int, n: int, w: complex) -> complex:
    # (iy - w)^-1 = sum_p delta^p (iy - conj w)^(-1-p), |delta| < |w|
    m = 2 * k - 1
    wb = w.conjugate()
    ratio = (w - wb) / wb
    term = _y_integral(n, m + 1, wb)
    total = term
    for p in range(SERIES_TERMS):
        big = m + 1 + p
        term *= -(big - n - 1) / big * ratio
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
    return total


def kernel_integral(k: int, n: int, w: complex) -> complex:
    """int_0^oo y^n (iy - w)^-1 (iy - conj w)^(1-2k) dy, w off the imaginary axis"""
    w = complex(w)
    if w.real == 0:
        raise DataError(f"w = {w} lies on the imaginary axis")
    if abs(2 * w.imag) < SERIES_RATIO * abs(w):
        return _kernel_series(k, n, w)
    return _kernel_partial_fractions(k, n, w)


def _row_tail(k: int, n: int, w0: complex, window: range) -> complex:
    """sum over t outside window of the large |t| asymptotic of kernel_integral(w0 + t)"""
    s = 2 * k - 1 - n
    lead = _y_integral(n, 2 * k, 1.0)
    lo, hi = window.start, window.stop - 1
    if s > 1:
        tail = ((w0 + hi + 0.5) ** (1 - s) + (-1) ** s * (-lo + 0.5 - w0) ** (1 - s)) / (s - 1)
    else:
        tail = cmath.log(w0 + lo - 0.5) - cmath.log(w0 + hi + 0.5) - 1j * math.pi
    return lead * tail


DIRECT_LEVELS = 4


def _aitken(coarse: complex, middle: complex, fine: complex) -> complex:
    """limit of three nested truncations with geometrically shrinking differences"""
    first, second = middle - coarse, fine - middle
    if abs(second) >= abs(first) or first == second:
        return fine
    return fine - second * second / (second - first)


@dataclass
class DirectSums:
    """
    Nested truncations S(B), S(B/2), S(B/4), S(B/8) of the Gamma-sum for
    H_(1-k,n), each index with the contribution of its last shell
    """
    k: int
    indices: Tuple[int, ...]
    levels: Tuple[int, ...]
    sums: List[List[complex]]
    last: List[complex]

    @property
    def prefactor(self) -> complex:
        return 2 * (2j) ** (2 * self.k - 2) / (2 * math.pi)

    def curve(self, i: int) -> List[Tuple[int, complex]]:
        """(level, prefactor * S(level)) from the coarsest level up"""
        return [(level, self.prefactor * total) for level, total in reversed(list(zip(self.levels, self.sums[i])))]

    def extrapolated(self, i: int, safety: float = 10.0) -> NumericValue:
        """
        Aitken limit of S(B/4), S(B/2), S(B); the error is the heuristic
        max(safety * |last shell|, |A(B) - A(B/2)|)
        """
        fine, middle, coarse, coarsest = self.sums[i]
        limit = _aitken(coarse, middle, fine)
        previous = _aitken(coarsest, coarse, middle)
        prefactor = self.prefactor
        estimate = abs(prefactor) * max(safety * abs(self.last[i]), abs(limit - previous))
        _logger.debug(f"H_(1-{self.k},{self.indices[i]}) bound {self.levels[0]}: "
                      f"S(B) - S(B/2) {abs(prefactor * (fine - middle)):.3e}, "
                      f"extrapolation {abs(prefactor * (limit - fine)):.3e}, estimate {estimate:.3e}")
        return NumericValue(mp.mpc(prefactor * limit), mp.mpf(estimate))


def direct_sums(k: int, indices: Sequence[int], tau, bound: int = 400, pole_guard: float = 1e-3) -> DirectSums:
    """
    H_(1-k,n)(tau) = (2i)^(2k-2)/(2 pi) int_0^oo H_(k,k-1)(iy, tau) y^n dy for every n in
    indices, truncated to max|entry| <= B for B = bound, bound/2, bound/4, bound/8 in one
    pass, every row corrected by the asymptotic of its terms beyond the window
    """
    indices = tuple(indices)
    for n in indices:
        _check_range(k, n)
    if bound < 2 ** (DIRECT_LEVELS - 1):
        raise DataError(f"matrix bound must be at least {2 ** (DIRECT_LEVELS - 1)}, got {bound}")
    point = as_point(tau)
    near = near_exceptional_set(point, pole_guard)
    if near is not None:
        raise ExceptionalSetError(f"tau = {mp.nstr(point, 8)} is within the guard {pole_guard} "
                                  f"of the exceptional set ({near})")
    tc = complex(point)
    m = 2 * k - 1
    levels = tuple(bound >> e for e in range(DIRECT_LEVELS))
    sums = [[0j] * DIRECT_LEVELS for _ in indices]
    last = [0j] * len(indices)
    for c, d, a0, b0 in bounded_rows(bound):
        j = c * tc + d
        w0 = (a0 * tc + b0) / j
        weight = j ** (2 * k - 2) * w0.imag ** m
        shell = max(c, abs(d))
        window = t_window(c, d, a0, b0, bound)
        inner = [t_window(c, d, a0, b0, level) for level in levels if shell <= level]
        for i, n in enumerate(indices):
            values = [kernel_integral(k, n, w0 + t) for t in window]
            for e, sub in enumerate(inner):
                offset = sub.start - window.start
                row = weight * (sum(values[offset:offset + len(sub)]) + _row_tail(k, n, w0, sub))
                sums[i][e] += row
                if e == 0 and shell == bound:
                    last[i] += row
    return DirectSums(k, indices, levels, sums, last)


def eval_H1kn_direct_many(k: int, indices: Sequence[int], tau, bound: int = 400, pole_guard: float = 1e-3,
                          safety: float = 10.0) -> List[NumericValue]:
    """extrapolated direct sums of H_(1-k,n)(tau) for every n in indices"""
    sums = direct_sums(k, indices, tau, bound, pole_guard)
    return [sums.extrapolated(i, safety) for i in range(len(sums.indices))]


def eval_H1kn_direct(k: int, n: int, tau, bound: int = 400, pole_guard: float = 1e-3,
                     safety: float = 10.0) -> NumericValue:
    return eval_H1kn_direct_many(k, (n, ), tau, bound, pole_guard, safety)[0]


def splitting_rhs(k: int, n: int, tau, cusp_data: Optional[FourierSeries] = None, series_terms: int = 60):
    """
    P_(1-k,n)(tau) + (-1)^(n+1) (2k-2)!/(4 pi)^(2k-1) E_(R_n)(tau) - R_n^*(tau)
    - ((-1)^k delta_(n,0) + delta_(n,2k-2)) (2k-2)!/(2 pi)^(2k-1) E_(E_2k)(tau).
    Exact on an ExactPoint when no Eichler integral enters, NumericValue otherwise.
    """
    _check_range(k, n)
    dimension = cusp_form_dimension(2 * k)
    if dimension and cusp_data is None:
        raise DataError(f"dim S_{2 * k} = {dimension}: the coefficients of R_{n} are required")
    eisenstein = ((-1) ** k if n == 0 else 0) + (1 if n == 2 * k - 2 else 0)
    value = local_polynomial(k, n, tau)
    if isinstance(tau, ExactPoint) and not dimension and not eisenstein:
        return value
    point = as_point(tau)
    result = NumericValue(to_mpc(value), mp.mpf(0))
    if dimension:
        factor = (-1) ** (n + 1) * mp.factorial(2 * k - 2) / (4 * mp.pi) ** (2 * k - 1)
        result = result.combine(eichler_holomorphic(cusp_data, point).scale(factor))
        result = result.combine(eichler_nonholomorphic(cusp_data, point), -1)
    if eisenstein:
        factor = -eisenstein * mp.factorial(2 * k - 2) / (2 * mp.pi) ** (2 * k - 1)
        result = result.combine(eichler_holomorphic(eisenstein_coeffs(k, series_terms), point).scale(factor))
    return result


def _slash_monomial(k: int, n: int, matrix: GammaMatrix, tau: ExactPoint) -> ExactNumber:
    return GaussPoly.monomial(n)(matrix.apply(tau)) * matrix.j(tau) ** (2 * k - 2)


def _real_sign(matrix: GammaMatrix, tau: ExactPoint) -> int:
    u = matrix.apply(tau).u
    return (u > 0) - (u < 0)


@dataclass(frozen=True)
class SingularityDescriptor:
    """
    Local singular part (i^(1-n)/2) sum_M sgn(Re(M tau)) (tau^n)|_(2-2k)M of
    P_(1-k,n) near a point of the exceptional set, M over the boundary matrices
    """
    k: int
    n: int
    base: ExactPoint
    matrices: Tuple[GammaMatrix, ...]

    def singular_value(self, side: ExactPoint, at: Optional[ExactPoint] = None) -> ExactNumber:
        """the singular part with the signs of side, evaluated at at (default side)"""
        at = side if at is None else at
        total = ExactNumber.coerce(0)
        for matrix in self.matrices:
            total = total + _slash_monomial(self.k, self.n, matrix, at) * _real_sign(matrix, side)
        return total * (I ** ((1 - self.n) % 4) / 2)

    def jump(self, plus: ExactPoint, minus: ExactPoint) -> ExactNumber:
        """difference of the one-sided limits at the base point"""
        return self.singular_value(plus, self.base) - self.singular_value(minus, self.base)


def singularity_descriptor(k: int, n: int, tau0: ExactPoint) -> SingularityDescriptor:
    _check_range(k, n)
    if not is_on_exceptional_set(tau0):
        raise DataError(f"point {tau0} does not lie on the exceptional set")
    matrices = tuple(enumerate_exceptional_matrices(tau0, BOUNDARY))
    _logger.debug(f"boundary matrices at {tau0}: {', '.join(map(str, matrices))}")
    return SingularityDescriptor(k, n, tau0, matrices)


def side_points(tau0: ExactPoint, epsilon: Fraction = JUMP_EPSILON) -> Tuple[ExactPoint, ExactPoint]:
    """M0^-1(M0 tau0 +- epsilon) for a boundary matrix M0, M0 tau0 on the imaginary axis"""
    matrix = enumerate_exceptional_matrices(tau0, BOUNDARY)[0]
    image = matrix.apply(tau0)
    inverse = matrix.inverse()
    plus = image.translate(epsilon).apply(inverse)
    minus = image.translate(-epsilon).apply(inverse)
    for side in (plus, minus):
        if is_on_exceptional_set(side):
            raise DataError(f"side point {side} at distance {epsilon} lies on the exceptional set")
    return ExactPoint(plus.u, plus.v_squared), ExactPoint(minus.u, minus.v_squared)


@dataclass
class JumpReport:
    """Exact one-sided limits of P_(1-k,n) at a point of the exceptional set"""
    k: int
    n: int
    base: ExactPoint
    plus: object
    minus: object
    on_set: object
    descriptor_jump: ExactNumber
    ladder: List[Tuple[Fraction, float, float]]

    @property
    def jump(self):
        return exact_or_omega(self.plus - self.minus)

    @property
    def jump_matches(self) -> bool:
        return self.jump == self.descriptor_jump

    @property
    def average_matches(self) -> bool:
        return exact_or_omega((self.plus + self.minus) / 2) == self.on_set

    @property
    def ladder_converges(self) -> bool:
        """distances to the one-sided limits shrink at least linearly in epsilon"""
        return all(plus <= 10 * float(eps) * (1 + abs(complex(to_mpc(self.plus))))
                   and minus <= 10 * float(eps) * (1 + abs(complex(to_mpc(self.minus))))
                   for eps, plus, minus in self.ladder)

    @property
    def passed(self) -> bool:
        return self.jump_matches and self.average_matches and self.ladder_converges

    def to_dict(self) -> dict:
        return {
            'k': self.k, 'n': self.n, 'base': str(self.base),
            'plus': str(self.plus), 'minus': str(self.minus), 'on_set': str(self.on_set),
            'jump': str(self.jump), 'descriptor_jump': str(self.descriptor_jump),
            'ladder': [{'epsilon': str(eps), 'plus': plus, 'minus': minus} for eps, plus, minus in self.ladder],
            'passed': self.passed,
        }


def jump_check(k: int, n: int, tau0: ExactPoint, ladder=EPSILON_LADDER) -> JumpReport:
    """
    One-sided limits of P_(1-k,n) across the exceptional set at tau0, compared
    exactly with the singularity descriptor and with the value on the set
    """
    descriptor = singularity_descriptor(k, n, tau0)
    plus_side, minus_side = side_points(tau0)
    plus = one_sided_polynomial(k, n, tau0, plus_side)
    minus = one_sided_polynomial(k, n, tau0, minus_side)
    steps = []
    for epsilon in ladder:
        near_plus, near_minus = side_points(tau0, epsilon)
        steps.append((epsilon,
                      float(abs(to_mpc(local_polynomial(k, n, near_plus)) - to_mpc(plus))),
                      float(abs(to_mpc(local_polynomial(k, n, near_minus)) - to_mpc(minus)))))
    report = JumpReport(k, n, tau0, plus, minus, local_polynomial(k, n, tau0),
                        descriptor.jump(plus_side, minus_side), steps)
    _logger.debug(f"jump of P_(1-{k},{n}) at {tau0}: {report.jump}, descriptor {report.descriptor_jump}")
    return report


__all__ = (
    'SingularityDescriptor',
    'JumpReport',
    'y_integral_closed_form',
    'kernel_integral',
    'DIRECT_LEVELS',
    'DirectSums',
    'direct_sums',
    'eval_H1kn_direct_many',
    'eval_H1kn_direct',
    'splitting_rhs',
    'singularity_descriptor',
    'side_points',
    'jump_check',
)
