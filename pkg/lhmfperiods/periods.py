"""
Periods r_n(f) = int_0^oo f(iy) y^n dy of the cusp forms f_{k,P}:
numeric quadrature, the exact formula through the locally polynomial part,
Eisenstein and Kohnen-Zagier period polynomials, Epstein zeta values
and kernel combinations
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

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil, comb, factorial, floor
from typing import Callable, Dict, List, Optional, Tuple

import mpmath as mp
from sympy import divisor_sigma
from sympy.ntheory import jacobi_symbol

from lhmfperiods.cache import CoefficientCache
from lhmfperiods.config import DEFAULT_CONFIG, Config
from lhmfperiods.exact import (I, ExactNumber, ExactPoint, GaussPoly, OmegaNumber, bernoulli_number,
                               bernoulli_polynomial, exact_or_omega, omega_value, periodized_bernoulli,
                               raise_monomial_closed_form, raise_polynomial, to_mpc)
from lhmfperiods.exceptions import (DataError, ExceptionalSetError, KernelError, SoftwareError,
                                    UnsupportedError)
from lhmfperiods.logger import logger
from lhmfperiods.modforms import (HOLOMORPHIC, NONHOLOMORPHIC, FourierSeries, NumericValue, delta_coeffs,
                                  eichler_holomorphic, eisenstein_coeffs, eval_series, fkp_evaluator, orbit_bound_for,
                                  periodic_power_sum, raised_eichler)
from lhmfperiods.quadforms import (CMPoint, GammaMatrix, QuadForm, bounded_rows, canonical_strip_form,
                                   class_of, cm_point, enumerate_classes, exceptional_sign_matrices,
                                   reduce, require_off_exceptional_set, stabilizer_order)

_logger = logger.getChild('periods')

THEOREM = 'theorem'
LEMMA = 'lemma'

NUMERIC = 'numeric'
EXACT = 'exact'
BOTH = 'both'
MODES = (NUMERIC, EXACT, BOTH)

CHOWLA_SELBERG = 'chowla-selberg'
SHELLS = 'shells'

QUAD_DEGREE = 5
CUTOFF_MAX = 60
PETERSSON_TOP = 8


def _check_range(k: int, n: int) -> None:
    if k < 2:
        raise DataError(f"weight parameter k must be at least 2, got {k}")
    if not 0 <= n <= 2 * k - 2:
        raise DataError(f"period index n must lie in 0..{2 * k - 2}, got {n}")


def _ipow(exponent: int) -> ExactNumber:
    """i**exponent for any integer exponent"""
    return I ** (exponent % 4)


def _is_interior(k: int, n: int) -> bool:
    return 0 < n < 2 * k - 2


def cusp_form_dimension(weight: int) -> int:
    """dim S_weight for SL2(Z)"""
    if weight < 0 or weight % 2:
        raise DataError(f"weight must be even and non-negative, got {weight}")
    if weight < 12:
        return 0
    return weight // 12 - (1 if weight % 12 == 2 else 0)


@dataclass
class PeriodResult:
    """One period r_n(f_{k,P}) with its exact value and/or numeric value"""
    k: int
    n: int
    form: Optional[QuadForm]
    exact: Optional[ExactNumber] = None
    numeric: Optional[NumericValue] = None
    method: dict = field(default_factory=dict)
    label: Optional[str] = None

    @property
    def mirror(self) -> int:
        """index 2k-2-n of the symmetric period r_n = (-1)^k r_(2k-2-n)"""
        return 2 * self.k - 2 - self.n

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        return str(self.form)

    def value(self) -> mp.mpc:
        """numeric value if present, else the embedded exact value"""
        if self.numeric is not None:
            return self.numeric.value
        if self.exact is not None:
            return to_mpc(self.exact)
        raise DataError(f"period r_{self.n} of {self.name} carries no value")

    def mismatch(self) -> Optional[mp.mpf]:
        """|exact - numeric| beyond the numeric error, None if not both present"""
        if self.exact is None or self.numeric is None:
            return None
        return max(mp.mpf(0), abs(to_mpc(self.exact) - self.numeric.value) - self.numeric.error)

    def to_dict(self, config: Optional[Config] = None) -> dict:
        record = {
            'k': self.k,
            'n': self.n,
            'form': self.form.as_list() if self.form is not None else self.name,
            'mirror': self.mirror,
            'exact': exact_record(self.exact),
            'numeric': None,
            'method': dict(self.method),
        }
        if self.numeric is not None:
            value = self.numeric.value
            record['numeric'] = {'re': float(mp.re(value)), 'im': float(mp.im(value)),
                                 'err': float(self.numeric.error)}
        if config is not None:
            record['config'] = config.to_dict()
            record['digest'] = config.digest()
        return record


def exact_record(value: Optional[ExactNumber]) -> Optional[dict]:
    """tagged JSON form of an exact value"""
    if value is None:
        return None
    if value.is_rational():
        return {'kind': 'rational', 'value': str(value.as_fraction())}
    if value.is_imaginary_rational():
        return {'kind': 'i-rational', 'value': str(value.imag.as_fraction())}
    return {'kind': 'field', 'value': str(value)}


def admissible_point(form: QuadForm) -> CMPoint:
    """CM point of the strip translate of form (0 < u < 1), off the exceptional set"""
    strip, _ = canonical_strip_form(form)
    return require_off_exceptional_set(cm_point(strip), f"CM point tau_P = {cm_point(form)} of {form}")


# Eisenstein periods

def eisenstein_period_exact(k: int, n: int):
    """
    r_n(E_2k): rational for odd n, zero for even interior n, and for
    n in (0, 2k-2) the OmegaNumber -+pi*zeta(2k-1)/((2k-1)*zeta(2k))
    """
    _check_range(k, n)
    if n in (0, 2 * k - 2):
        sign = 1 if n == 0 else (-1) ** k
        return OmegaNumber(0, Fraction(-sign, 2 * k - 1), k)
    if n % 2 == 0:
        return ExactNumber.coerce(0)
    value = (Fraction((-1) ** ((n - 1) // 2) * 2 * k)
             * bernoulli_number(n + 1) * bernoulli_number(2 * k - 1 - n)
             / (bernoulli_number(2 * k) * (n + 1) * (2 * k - 1 - n)))
    return ExactNumber.coerce(value)


@dataclass(frozen=True)
class EisensteinPeriodFunction:
    """
    r_E(tau) = (tau^(2k-1) + 1/tau)/(2k-1) + sum i^(1-n) C(2k-2,n) r_n(E) tau^(2k-2-n)
    split into an exact Laurent polynomial and the coefficient of pi*zeta(2k-1)/zeta(2k)
    """
    k: int
    exact: GaussPoly
    omega: GaussPoly

    def __call__(self, tau):
        if isinstance(tau, ExactPoint):
            return exact_or_omega(OmegaNumber(self.exact(tau), self.omega(tau), self.k))
        return self.exact(tau) + self.omega(tau) * omega_value(self.k)


@lru_cache(maxsize=None)
def eisenstein_period_function(k: int) -> EisensteinPeriodFunction:
    if k < 2:
        raise DataError(f"Eisenstein period functions need k >= 2, got {k}")
    exact = GaussPoly({2 * k - 1: Fraction(1, 2 * k - 1), -1: Fraction(1, 2 * k - 1)})
    omega = GaussPoly()
    for n in range(2 * k - 1):
        value = eisenstein_period_exact(k, n) * _ipow(1 - n) * comb(2 * k - 2, n)
        if isinstance(value, OmegaNumber):
            exact = exact + GaussPoly.monomial(2 * k - 2 - n, value.base)
            omega = omega + GaussPoly.monomial(2 * k - 2 - n, value.omega)
        else:
            exact = exact + GaussPoly.monomial(2 * k - 2 - n, value)
    return EisensteinPeriodFunction(k, exact, omega)


@lru_cache(maxsize=None)
def eisenstein_odd_polynomial(k: int) -> GaussPoly:
    """(2k (2k-2)!/B_2k) sum_(odd n, -1 <= n <= 2k-1) B_(n+1) B_(2k-1-n)/((n+1)!(2k-1-n)!) tau^(2k-2-n)"""
    scale = Fraction(2 * k * factorial(2 * k - 2)) / bernoulli_number(2 * k)
    return GaussPoly({2 * k - 2 - n: scale * bernoulli_number(n + 1) * bernoulli_number(2 * k - 1 - n)
                      / (factorial(n + 1) * factorial(2 * k - 1 - n))
                      for n in range(-1, 2 * k, 2)})


def period_function_value(k: int, periods: Dict[int, object], tau):
    """sum i^(1-m) C(2k-2,m) r_m tau^(2k-2-m) over the given periods, numerically"""
    tau = to_mpc(tau.tau) if isinstance(tau, ExactPoint) else mp.mpc(tau)
    return mp.fsum(to_mpc(_ipow(1 - m)) * comb(2 * k - 2, m) * to_mpc(value) * tau ** (2 * k - 2 - m)
                   for m, value in periods.items())


def eichler_cocycle_residual(f: FourierSeries, period_function: Callable, tau) -> NumericValue:
    """
    E_f(tau) - tau^(2k-2) E_f(-1/tau) - ((-2 pi i)^(2k-1)/(2k-2)!) r_f(tau)
    for the holomorphic Eichler integral E_f
    """
    tau = mp.mpc(tau)
    k = f.k
    here = eichler_holomorphic(f, tau)
    there = eichler_holomorphic(f, -1 / tau).scale(tau ** (2 * k - 2))
    factor = (-2 * mp.pi * mp.j) ** (2 * k - 1) / mp.factorial(2 * k - 2)
    return NumericValue(here.value - there.value - factor * to_mpc(period_function(tau)),
                        here.error + there.error)


# Kohnen-Zagier period polynomials

@dataclass(frozen=True)
class PeriodPolynomial:
    """
    Period polynomial r_f = r^- + i r^+ of a weight 2k form, with the parity
    parts known for the source (None where unknown)
    """
    k: int
    odd: Optional[GaussPoly]
    even: Optional[GaussPoly]
    source: str

    @property
    def polynomial(self) -> GaussPoly:
        if self.odd is None or self.even is None:
            raise DataError(f"{self.source}: only one parity part is known")
        return self.odd + self.even * I

    def is_zero(self) -> bool:
        return all(part is None or part.is_zero() for part in (self.odd, self.even))

    def periods(self) -> Dict[int, ExactNumber]:
        """r_m encoded in the known parity parts"""
        k = self.k
        found = {}
        for m in range(2 * k - 1):
            part = self.odd if m % 2 else self.even
            if part is None:
                continue
            scale = _ipow(1 - m) * comb(2 * k - 2, m)
            coefficient = part.coeff(2 * k - 2 - m)
            found[m] = coefficient / scale if m % 2 else coefficient * I / scale
        return found


def _bernoulli_term(k: int, n: int, sign: int) -> GaussPoly:
    """(B_(n+1)/(n+1) + sign B_(2k-1-n)/(2k-1-n))|_(2-2k)(I - S)"""
    poly = (bernoulli_polynomial(n + 1) / Fraction(n + 1)
            + bernoulli_polynomial(2 * k - 1 - n) * Fraction(sign, 2 * k - 1 - n))
    return poly - poly.slash(k, GammaMatrix.S())


@lru_cache(maxsize=None)
def kz_period_polynomial(k: int, n: int) -> PeriodPolynomial:
    """
    Odd period polynomial of R_n for even n, even period polynomial for odd n,
    assembled exactly from Bernoulli polynomials
    """
    _check_range(k, n)
    lead = _ipow(n + 1)
    scale = (I / 2) ** (2 * k - 2)
    if n % 2 == 0:
        rhs = (_bernoulli_term(k, n, -1) * lead
               + (GaussPoly.monomial(n) - GaussPoly.monomial(2 * k - 2 - n)) * lead)
        eisenstein = (1 if n == 0 else 0) + ((-1) ** k if n == 2 * k - 2 else 0)
        if eisenstein:
            rhs = rhs + eisenstein_odd_polynomial(k) * (I * eisenstein)
        part = rhs / (scale * I)
    else:
        rhs = (-(_bernoulli_term(k, n, 1) * lead)
               - (GaussPoly.monomial(n) + GaussPoly.monomial(2 * k - 2 - n)) * lead
               + (GaussPoly.monomial(2 * k - 2) - GaussPoly.monomial(0)) * eisenstein_period_exact(k, n))
        part = rhs / scale
    if not part.is_zero():
        if not part.is_polynomial() or part.degree > 2 * k - 2:
            raise SoftwareError(f"period polynomial of R_{n} (k={k}) has exponents outside 0..{2 * k - 2}: {part}")
        if (part.even_part() if n % 2 == 0 else part.odd_part()) != GaussPoly():
            raise SoftwareError(f"period polynomial of R_{n} (k={k}) is not parity pure: {part}")
    _logger.debug(f"Kohnen-Zagier polynomial k={k} n={n}: {part}")
    if n % 2 == 0:
        return PeriodPolynomial(k, part, None, f"R_{n}")
    return PeriodPolynomial(k, None, part, f"R_{n}")


def kz_periods(k: int, n: int) -> Dict[int, ExactNumber]:
    """exact r_m(R_n) for the m of opposite parity to n"""
    return kz_period_polynomial(k, n).periods()


# Locally polynomial part

def _antisymmetric(k: int, n: int) -> GaussPoly:
    """tau^n - (-1)^n tau^(2k-2-n)"""
    return GaussPoly.monomial(n) - GaussPoly.monomial(2 * k - 2 - n, (-1) ** n)


def _slashed_value(poly: GaussPoly, k: int, matrix: GammaMatrix, tau):
    """(c tau + d)^(2k-2) poly(M tau)"""
    return poly(matrix.apply(tau)) * matrix.j(tau) ** (2 * k - 2)


def _sign(value) -> int:
    return (value > 0) - (value < 0)


def _real_part(tau):
    return tau.u if isinstance(tau, ExactPoint) else tau.real


def _start(value, exact: bool):
    return value if exact else to_mpc(value)


def _local_polynomial_theorem(k: int, n: int, tau, exact: bool):
    lead = _ipow(1 - n)
    value = _start(eisenstein_period_exact(k, n), exact)
    value = value + _start(_ipow(3 * (n + 1)) / (n + 1), exact) * periodized_bernoulli(n + 1, tau)
    value = value + _start(_ipow(n + 1) / (2 * k - 1 - n), exact) * periodized_bernoulli(2 * k - 1 - n, tau)
    poly = _antisymmetric(k, n)
    for matrix, sign in exceptional_sign_matrices(tau):
        weight = Fraction(1) if sign < 0 else Fraction(1, 2)
        value = value - _start(lead * weight, exact) * _slashed_value(poly, k, matrix, tau)
    return value


def _lemma_matrices(tau) -> List[Tuple[GammaMatrix, int]]:
    """PSL matrices with sgn(Re(M tau)) != sgn(M), with that difference"""
    found = []
    for matrix, sign in exceptional_sign_matrices(tau):
        found.append((matrix, sign - 1))
        found.append((GammaMatrix.S() @ matrix, 1 - sign))
    u = _real_part(tau)
    reach = int(ceil(abs(u))) + 1
    for t in range(-reach, reach + 1):
        translate = GammaMatrix.T(t)
        found.append((translate, _sign(u + t) - _sign(t)))
        inversion = GammaMatrix(0, -1, 1, t)
        found.append((inversion, _sign(t) - _sign(u + t)))
    return [(matrix, weight) for matrix, weight in found if weight]


def _local_polynomial_lemma(k: int, n: int, tau, exact: bool):
    value = _start(eisenstein_period_exact(k, n), exact)
    value = value + _start(_ipow(3 * (n + 1)) / (n + 1), exact) * bernoulli_polynomial(n + 1)(tau)
    value = value + _start(_ipow(n + 1) / (2 * k - 1 - n), exact) * bernoulli_polynomial(2 * k - 1 - n)(tau)
    value = value + _start(_ipow(3 * (n + 1)) / 2, exact) * _antisymmetric(k, n)(tau)
    monomial = GaussPoly.monomial(n)
    total = _start(ExactNumber.coerce(0), exact)
    for matrix, weight in _lemma_matrices(tau):
        total = total + _slashed_value(monomial, k, matrix, tau) * weight
    return value + _start(_ipow(1 - n) / 2, exact) * total


def local_polynomial(k: int, n: int, tau, representation: str = THEOREM):
    """
    The locally polynomial part P_(1-k,n)(tau); exact (ExactNumber, or OmegaNumber
    for n in (0, 2k-2)) on an ExactPoint, mpmath otherwise.
    On the exceptional set the value is the average of the one-sided limits.
    """
    _check_range(k, n)
    exact = isinstance(tau, ExactPoint)
    if not exact:
        tau = mp.mpc(tau)
        if tau.imag <= 0:
            raise DataError(f"point {tau} is not in the upper half plane")
    if representation == THEOREM:
        value = _local_polynomial_theorem(k, n, tau, exact)
    elif representation == LEMMA:
        value = _local_polynomial_lemma(k, n, tau, exact)
    else:
        raise DataError(f"unknown representation {representation!r}")
    return exact_or_omega(value) if exact else value


def one_sided_polynomial(k: int, n: int, tau: ExactPoint, side: ExactPoint):
    """
    The polynomial P_(1-k,n) restricts to on the component of side, evaluated
    at tau; a one-sided limit when tau lies on the boundary of that component
    """
    _check_range(k, n)
    require_off_exceptional_set(side, "side point")
    z = tau.tau - floor(side.u)
    value = eisenstein_period_exact(k, n)
    value = value + bernoulli_polynomial(n + 1)(z) * (_ipow(3 * (n + 1)) / (n + 1))
    value = value + bernoulli_polynomial(2 * k - 1 - n)(z) * (_ipow(n + 1) / (2 * k - 1 - n))
    poly = _antisymmetric(k, n)
    for matrix, _ in exceptional_sign_matrices(side):
        value = value - _slashed_value(poly, k, matrix, tau) * _ipow(1 - n)
    return exact_or_omega(value)


def local_polynomial_cocycle(k: int, n: int, tau: ExactPoint, matrix: GammaMatrix):
    """P|(I - M) at an exact point, P|M = (c tau + d)^(2k-2) P(M tau)"""
    here = local_polynomial(k, n, tau)
    there = local_polynomial(k, n, matrix.apply(tau)) * matrix.j(tau) ** (2 * k - 2)
    return exact_or_omega(here - there)


def expected_s_cocycle(k: int, n: int, tau: ExactPoint):
    """
    -(i/2)^(2k-2) r^+_(R_n)(tau) for odd n,
    -(i/2)^(2k-2) i r^-_(R_n)(tau) + i (delta_(n,0) + (-1)^k delta_(n,2k-2)) r_E(tau) for even n
    """
    _check_range(k, n)
    poly = kz_period_polynomial(k, n)
    scale = (I / 2) ** (2 * k - 2)
    if n % 2:
        return -(scale * poly.even(tau))
    value = -(scale * I * poly.odd(tau))
    eisenstein = (1 if n == 0 else 0) + ((-1) ** k if n == 2 * k - 2 else 0)
    if eisenstein:
        value = value + eisenstein_period_function(k)(tau) * (I * eisenstein)
    return exact_or_omega(value)


def _raised_at(k: int, n: int, point: ExactPoint):
    v = point.v
    value = eisenstein_period_exact(k, n) * ((-v) ** (1 - k) * Fraction(factorial(2 * k - 2), factorial(k - 1)))
    value = value + raise_polynomial(bernoulli_polynomial(n + 1), k, point) * (_ipow(3 * (n + 1)) / (n + 1))
    value = value + (raise_polynomial(bernoulli_polynomial(2 * k - 1 - n), k, point)
                     * (_ipow(n + 1) / (2 * k - 1 - n)))
    lead = _ipow(1 - n)
    for matrix, sign in exceptional_sign_matrices(point):
        if sign == 0:
            raise ExceptionalSetError(f"point {point} lies on the exceptional set")
        image = matrix.apply(point)
        term = (raise_monomial_closed_form(k, n, image)
                - raise_monomial_closed_form(k, 2 * k - 2 - n, image) * (-1) ** n)
        value = value - term * lead
    return exact_or_omega(value)


def raised_local_polynomial(k: int, n: int, form: QuadForm):
    """
    R^(k-1)_(2-2k) P_(1-k,n) at the CM point of the strip translate of form;
    ExactNumber for interior n, OmegaNumber otherwise
    """
    _check_range(k, n)
    point = admissible_point(form)
    value = _raised_at(k, n, point)
    if _is_interior(k, n):
        _require_parity_field(value * ExactNumber.sqrt(-form.disc) ** (k - 1), n,
                              f"|d|^((k-1)/2) R^(k-1) P_(1-{k},{n})(tau_P)")
    return value


def _require_parity_field(value, n: int, what: str) -> None:
    if isinstance(value, OmegaNumber) or not (value.is_rational() if n % 2 else value.is_imaginary_rational()):
        raise SoftwareError(f"{what} = {value} is not in {'Q' if n % 2 else 'iQ'}")


# exact periods

def _period_prefactor(form: QuadForm, k: int) -> ExactNumber:
    """|d|^((k-1)/2) (-1)^(k-1) / (|stabilizer| 2^(k-2) (k-1)!)"""
    root = ExactNumber.sqrt(-form.disc) ** (k - 1)
    return root * Fraction((-1) ** (k - 1), stabilizer_order(form) * 2 ** (k - 2) * factorial(k - 1))


def exact_period(form: QuadForm, k: int, n: int, cusp_data: Optional[FourierSeries] = None,
                 series_terms: int = 60, cache: Optional[CoefficientCache] = None) -> PeriodResult:
    """
    r_n(f_{k,P}) from the raised locally polynomial part at tau_P.
    Exact in Q (odd n) or iQ (even n) for interior n when S_2k = {0};
    otherwise the exact part is completed numerically by the raised
    Eichler integrals of R_n (cusp_data) and of E_2k.
    """
    _check_range(k, n)
    interior = _is_interior(k, n)
    dimension = cusp_form_dimension(2 * k)
    if interior and dimension == 0:
        value = raised_local_polynomial(k, n, form) * _period_prefactor(form, k)
        _require_parity_field(value, n, f"r_{n}(f_({k},{form}))")
        return PeriodResult(k, n, form, exact=value, method={'path': EXACT})
    if dimension and cusp_data is None:
        raise UnsupportedError(f"r_{n}(f_({k},{form})) needs the coefficients of R_{n} "
                               f"(dim S_{2 * k} = {dimension})")
    reduced = class_of(form)
    point = admissible_point(reduced)
    root = ExactNumber.sqrt(-form.disc) ** (k - 1) / stabilizer_order(reduced)
    local = _raised_at(k, n, point) * _period_prefactor(reduced, k)
    total = NumericValue(to_mpc(local), mp.mpf(0))
    if dimension:
        if cusp_data.weight != 2 * k:
            raise DataError(f"cusp data has weight {cusp_data.weight}, expected {2 * k}")
        raised = raised_eichler(cusp_data, point, NONHOLOMORPHIC)
        combination = NumericValue(raised.value + (-1) ** (n + 1) * mp.conj(raised.value), 2 * raised.error)
        total = total.combine(combination.scale(to_mpc(root) * (-1) ** k
                                                / (2 ** (k - 2) * factorial(k - 1))))
    eisenstein = (1 if n == 0 else 0) + ((-1) ** k if n == 2 * k - 2 else 0)
    if eisenstein:
        series = eisenstein_coeffs(k, series_terms, cache)
        raised = raised_eichler(series, point, HOLOMORPHIC)
        factor = (eisenstein * mp.mpf(2) ** (k + 1) * factorial(2 * k - 2)
                  / ((4 * mp.pi) ** (2 * k - 1) * factorial(k - 1)))
        total = total.combine(raised.scale(to_mpc(root) * factor))
    return PeriodResult(k, n, form, numeric=total,
                        method={'path': EXACT, 'local_part': str(local), 'representative': str(reduced)})


# numeric periods

def _integration_points(stop: int) -> List[mp.mpf]:
    points = [1 + mp.mpf(j) / 8 for j in range(9)]
    points.extend(mp.mpf(y) for y in range(3, stop + 1))
    return points


def _cutoff(f: Callable, k: int, tol: float) -> Tuple[int, mp.mpf]:
    """height Y with the e^(-2 pi Y) tail of the folded integrand below tol/10"""
    tail = mp.inf
    for y in range(3, CUTOFF_MAX + 1):
        size = max(abs(f(mp.mpc(0, y)).value), abs(f(mp.mpc(0, y + mp.mpf(1) / 2)).value))
        tail = 2 * size * mp.mpf(y) ** (2 * k - 2) / (2 * mp.pi - mp.mpf(2 * k - 2) / y)
        if tail < tol / 10:
            return y, tail
    _logger.warning(f"integration cutoff {CUTOFF_MAX} reached with tail estimate {mp.nstr(tail, 3)}")
    return CUTOFF_MAX, tail


def numeric_period(f: Callable, k: int, n: int, quad_tol: float = 1e-12) -> NumericValue:
    """
    r_n(f) = int_1^oo f(iy) (y^n + (-1)^k y^(2k-2-n)) dy for f modular of weight 2k,
    f(z) -> NumericValue; Gauss-Legendre on [1, Y] plus the tail bound
    """
    _check_range(k, n)
    stop, tail = _cutoff(f, k, quad_tol)
    sign = (-1) ** k
    mirror = 2 * k - 2 - n

    def integrand(y):
        return f(mp.mpc(0, y)).value * (y ** n + sign * y ** mirror)

    value, quad_error = mp.quad(integrand, _integration_points(stop), method='gauss-legendre',
                                error=True, maxdegree=QUAD_DEGREE)
    # pointwise error bounds of f integrated against the same weights
    propagated = mp.quad(lambda y: f(mp.mpc(0, y)).error * (y ** n + y ** mirror),
                         _integration_points(stop), method='gauss-legendre', maxdegree=QUAD_DEGREE)
    error = quad_error + propagated + tail
    _logger.debug(f"r_{n} quadrature on [1, {stop}]: quad {mp.nstr(quad_error, 3)}, "
                  f"propagated {mp.nstr(propagated, 3)}, tail {mp.nstr(tail, 3)}")
    if error > quad_tol * 1e6:
        _logger.warning(f"r_{n}: error bound {mp.nstr(error, 3)} above the quadrature tolerance")
    return NumericValue(mp.mpc(value), mp.mpf(error))


def numeric_fkp_period(form: QuadForm, k: int, n: int, config: Config = DEFAULT_CONFIG) -> PeriodResult:
    """r_n(f_{k,P}) by quadrature; forms with tau_P on the exceptional set are rejected"""
    _check_range(k, n)
    admissible_point(form)
    reduced = class_of(form)
    orbit_bound = orbit_bound_for(k, config.orbit_bound)
    evaluator = fkp_evaluator(reduced, k, orbit_bound, config.pole_guard, config.quad_tol)
    value = numeric_period(evaluator, k, n, config.quad_tol)
    return PeriodResult(k, n, form, numeric=value,
                        method={'path': NUMERIC, 'orbit_bound': orbit_bound,
                                'quad_degree': QUAD_DEGREE})


def series_evaluator(f: FourierSeries) -> Callable:
    """z -> NumericValue of the q-expansion"""
    return lambda z: eval_series(f, z)


# cusp forms for dim S_2k = 1

@lru_cache(maxsize=16)
def _basis_coefficients(k: int, order: int) -> Tuple:
    delta = delta_coeffs(order).coefficients
    if k == 6:
        return delta
    eisenstein = (Fraction(1),) + eisenstein_coeffs(k - 6, order).coefficients
    return tuple(sum(delta[i - 1] * eisenstein[n - i] for i in range(1, n + 1)) for n in range(1, order + 1))


def cusp_basis_form(k: int, order: int = 60) -> FourierSeries:
    """Delta * E_(2k-12), the normalized cusp form when dim S_2k = 1"""
    dimension = cusp_form_dimension(2 * k)
    if dimension != 1:
        raise UnsupportedError(f"dim S_{2 * k} = {dimension}; only one dimensional cusp spaces are supported")
    if k == 6:
        return delta_coeffs(order)
    scale = 2 * (1 + eisenstein_coeffs(k - 6, 1).growth[0])
    return FourierSeries(2 * k, Fraction(0), _basis_coefficients(k, order), (scale, 2 * k - 5),
                         kind=f"Delta*E{2 * k - 12}")


def petersson_norm(f: FourierSeries, cache: Optional[CoefficientCache] = None) -> NumericValue:
    """
    <f, f> = int over the standard fundamental domain of |f|^2 v^(2k-2) du dv,
    two dimensional quadrature truncated at v = PETERSSON_TOP
    """
    params = {'weight': f.weight, 'kind': f.kind, 'order': f.order, 'top': PETERSSON_TOP}
    if cache is not None:
        stored = cache.get('petersson', params)
        if stored is not None:
            return NumericValue(mp.mpc(mp.mpf(stored['value'])), mp.mpf(stored['error']))
    fp = mp.fp
    coefficients = [complex(to_mpc(c)) for c in f.coefficients]
    power = f.weight - 2

    def density(u, v):
        q = fp.expjpi(2 * complex(u, v))
        total = 0j
        for c in reversed(coefficients):
            total = total * q + c
        return abs(total * q) ** 2 * v ** power

    def column(u):
        return fp.quad(lambda v: density(u, v), [fp.sqrt(1 - u * u), 1, 2, 4, PETERSSON_TOP])

    value, error = fp.quad(column, [0, 0.5], error=True)
    value, error = 2 * value, 2 * error
    size = sum(abs(c) * fp.exp(-2 * fp.pi * n * PETERSSON_TOP) for n, c in enumerate(coefficients, 1))
    tail = size ** 2 * PETERSSON_TOP ** power / (4 * fp.pi - power / PETERSSON_TOP)
    error = max(error, 1e-12 * value) + tail
    _logger.debug(f"<{f.kind}, {f.kind}> = {value:.10e} +- {error:.2e}")
    if cache is not None:
        cache.put('petersson', params, {'value': repr(value), 'error': repr(error)})
    return NumericValue(mp.mpc(value), mp.mpf(error))


def rn_coefficients(k: int, n: int, order: int = 60, quad_tol: float = 1e-12,
                    cache: Optional[CoefficientCache] = None) -> Tuple[FourierSeries, NumericValue]:
    """
    R_n = (r_n(g)/<g, g>) g for the normalized cusp form g when dim S_2k = 1.
    Returns the series and the scale factor with its error.
    """
    _check_range(k, n)
    basis = cusp_basis_form(k, order)
    norm = petersson_norm(basis, cache)
    period = numeric_period(series_evaluator(basis), k, n, quad_tol)
    scale = period.value.real / norm.value.real
    error = (period.error + abs(scale) * norm.error) / norm.value.real
    _logger.debug(f"R_{n} = {mp.nstr(scale, 12)} * {basis.kind}")
    return basis.scaled(scale, kind=f"R{n}"), NumericValue(mp.mpc(scale), mp.mpf(error))


def cohen_series(k: int, n: int, tau, bound: int = 40) -> NumericValue:
    """
    R_n(tau) = (2^(2k-3)/(i^(2k-1-n) C(2k-2,n) pi)) sum over SL2(Z) of tau^(-n-1)|_2k M,
    truncated to max|entry| <= bound; error estimated from the half bound
    """
    _check_range(k, n)
    if not _is_interior(k, n):
        raise DataError(f"the series needs 0 < n < 2k-2, got n={n}")
    tau = mp.mpc(tau)
    half = bound // 2
    total = partial = mp.mpc(0)
    for c, d, a0, b0 in bounded_rows(bound):
        j = c * tau + d
        term = j ** (-2 * k) * periodic_power_sum(n + 1, (a0 * tau + b0) / j)
        total += term
        if max(c, abs(d)) <= half:
            partial += term
    prefactor = mp.mpf(2) ** (2 * k - 3) / (to_mpc(_ipow(2 * k - 1 - n)) * comb(2 * k - 2, n) * mp.pi)
    return NumericValue(2 * prefactor * total, 2 * abs(prefactor) * abs(total - partial))


# kernel combinations

def cohen_relation(k: int, j: int) -> Dict[int, int]:
    """
    sum_(odd n <= j-1) C(j,n)(-1)^((n-1)/2) R_n + sum_(odd n >= j) C(2k-2-j,n-j)(-1)^((n-1)/2) R_n = 0,
    folded onto n <= k-1 by R_(2k-2-n) = (-1)^k R_n
    """
    if not 0 <= j <= 2 * k - 2:
        raise DataError(f"relation index j must lie in 0..{2 * k - 2}, got {j}")
    relation: Dict[int, int] = {}
    for n in range(1, 2 * k - 2, 2):
        if n <= j - 1:
            coefficient = comb(j, n)
        else:
            coefficient = comb(2 * k - 2 - j, n - j) if n >= j else 0
        coefficient *= (-1) ** ((n - 1) // 2)
        target, sign = (n, 1) if n <= 2 * k - 2 - n else (2 * k - 2 - n, (-1) ** k)
        relation[target] = relation.get(target, 0) + sign * coefficient
    return {n: a for n, a in sorted(relation.items()) if a}


def kernel_residual(k: int, coeffs: Dict[int, Fraction]) -> GaussPoly:
    """sum a_n r^(+-)_(R_n), zero exactly when sum a_n R_n = 0"""
    residual = GaussPoly()
    for n, a in coeffs.items():
        poly = kz_period_polynomial(k, n)
        residual = residual + (poly.even if n % 2 else poly.odd) * a
    return residual


def _normalize_coefficients(k: int, coeffs: Dict) -> Dict[int, Fraction]:
    normalized = {int(n): Fraction(a) for n, a in coeffs.items() if Fraction(a)}
    if not normalized:
        raise DataError("empty linear combination")
    parities = {n % 2 for n in normalized}
    if len(parities) > 1:
        raise DataError(f"linear combinations must use one parity of n, got {sorted(normalized)}")
    for n in normalized:
        if not _is_interior(k, n):
            raise DataError(f"linear combinations use interior n in 1..{2 * k - 3}, got {n}")
    return normalized


def linear_combination_period(form: QuadForm, k: int, coeffs: Dict) -> ExactNumber:
    """
    sum a_n r_n(f_{k,P}) for sum a_n R_n = 0; the cusp contributions cancel,
    the result lies in Q (odd n) or iQ (even n)
    """
    coeffs = _normalize_coefficients(k, coeffs)
    residual = kernel_residual(k, coeffs)
    if not residual.is_zero():
        raise KernelError(f"coefficients {coeffs} are not in the kernel, residual {residual}",
                          residual=residual)
    prefactor = _period_prefactor(form, k)
    value = ExactNumber.coerce(0)
    for n, a in coeffs.items():
        value = value + raised_local_polynomial(k, n, form) * prefactor * a
    parity = next(iter(coeffs)) % 2
    _require_parity_field(value, parity, f"combination {coeffs} of periods of f_({k},{form})")
    _logger.debug(f"combination {coeffs} of f_({k},{form}) = {value}")
    return value


def period_plusminus(result: PeriodResult):
    """(r_n(f^+), r_n(f^-)) = (Re r_n(f), -Im r_n(f)), exact when the result is exact"""
    if result.exact is not None:
        return result.exact.real, -result.exact.imag
    if result.numeric is None:
        raise DataError(f"period r_{result.n} of {result.name} carries no value")
    value, error = result.numeric
    return NumericValue(mp.mpc(value.real), error), NumericValue(mp.mpc(-value.imag), error)


# Epstein zeta

def _chowla_selberg(form: QuadForm, s: int) -> NumericValue:
    a, b, c = form.a, form.b, form.c
    delta = mp.mpf(-form.disc)
    s = mp.mpf(s)
    constant = 2 * mp.zeta(2 * s) * mp.mpf(a) ** -s
    constant += (2 ** (2 * s) * mp.mpf(a) ** (s - 1) * mp.sqrt(mp.pi) * mp.gamma(s - mp.mpf(1) / 2)
                 * mp.zeta(2 * s - 1) / (mp.gamma(s) * delta ** (s - mp.mpf(1) / 2)))
    scale = 2 ** (s + mp.mpf(5) / 2) * mp.pi ** s / (mp.gamma(s) * mp.sqrt(a) * delta ** ((2 * s - 1) / 4))
    rate = mp.pi * mp.sqrt(delta) / a
    eps = mp.mpf(10) ** (-mp.mp.dps)
    terms = []
    index = 0
    while True:
        index += 1
        sigma = mp.mpf(int(divisor_sigma(index, int(2 * s - 1)))) / mp.mpf(index) ** (2 * s - 1)
        term = (mp.mpf(index) ** (s - mp.mpf(1) / 2) * sigma * mp.cospi(mp.mpf(index * b) / a)
                * mp.besselk(s - mp.mpf(1) / 2, rate * index))
        terms.append(term)
        if abs(term) * scale < eps * abs(constant) or index > 10000:
            break
    # K decays like e^(-rate N): geometric tail of the last term
    error = abs(terms[-1]) * scale * 2 * mp.exp(-rate) / (1 - mp.exp(-rate))
    return NumericValue(mp.mpc(constant + scale * mp.fsum(terms)), error)


def _shells(form: QuadForm, s: int, radius: int) -> NumericValue:
    fp = mp.fp
    a, b, c = form.a, form.b, form.c
    total = 0.0
    for r in range(1, radius + 1):
        shell = 0.0
        for x in range(-r, r + 1):
            for y in (-r, r):
                shell += float(a * x * x + b * x * y + c * y * y) ** -s
        for y in range(-r + 1, r):
            for x in (-r, r):
                shell += float(a * x * x + b * x * y + c * y * y) ** -s
        total += shell
    smallest = ((a + c) - fp.sqrt((a - c) ** 2 + b * b)) / 2
    # 8r points with Q >= smallest r^2 on shell r
    tail = 8 * smallest ** -s * radius ** (2 - 2 * s) / (2 * s - 2)
    return NumericValue(mp.mpc(total), mp.mpf(tail) + mp.mpf(1e-15) * total)


def epstein_zeta(form: QuadForm, s: int, method: str = CHOWLA_SELBERG, radius: int = 300) -> NumericValue:
    """sum over (x, y) != (0, 0) of form(x, y)^-s, s >= 2"""
    form.require_positive_definite()
    if int(s) != s or s < 2:
        raise DataError(f"Epstein zeta needs an integer s >= 2, got {s}")
    reduced, _ = reduce(form)
    if method == CHOWLA_SELBERG:
        return _chowla_selberg(reduced, int(s))
    if method == SHELLS:
        return _shells(reduced, int(s), radius)
    raise DataError(f"unknown Epstein method {method!r}")


def _kronecker(d: int, m: int) -> int:
    """Kronecker symbol (d/m) for m > 0"""
    result = 1
    while m % 2 == 0:
        m //= 2
        if d % 2 == 0:
            return 0
        result *= 1 if d % 8 in (1, 7) else -1
    if m == 1:
        return result
    return result * jacobi_symbol(d % m, m)


def epstein_class_number_one(d: int, s: int) -> Optional[mp.mpf]:
    """w zeta(s) L(chi_d, s) for discriminants with one class of primitive forms, else None"""
    if len(enumerate_classes(d)) != 1:
        return None
    units = {-3: 6, -4: 4}.get(d, 2)
    character = [_kronecker(d, m) for m in range(1, -d + 1)]
    character = character[-1:] + character[:-1]
    return units * mp.zeta(s) * mp.dirichlet(s, character)


def outer_period_identity(form: QuadForm, k: int) -> NumericValue:
    """-|d|^(k-1/2) zeta_P(k) / (2 (2k-1) |stabilizer| zeta(2k)), the value of r_0(f^+)"""
    zeta = epstein_zeta(form, k)
    d = mp.mpf(-form.disc)
    factor = -d ** (k - mp.mpf(1) / 2) / (2 * (2 * k - 1) * stabilizer_order(form) * mp.zeta(2 * k))
    return zeta.scale(factor)


def outer_period_formula(form: QuadForm, k: int, series_terms: int = 60,
                         cache: Optional[CoefficientCache] = None) -> NumericValue:
    """r_0(f^+_{k,P}) through zeta(2k), zeta(2k-1) and the raised Eichler integral of E_2k at tau_P"""
    reduced = class_of(form)
    point = admissible_point(reduced)
    v = mp.sqrt(mp.mpf(point.v_squared.numerator) / point.v_squared.denominator)
    d = mp.mpf(-form.disc)
    raised = raised_eichler(eisenstein_coeffs(k, series_terms, cache), point, HOLOMORPHIC)
    zeta_even = mp.zeta(2 * k)
    weight = 4 * mp.factorial(2 * k - 1) * zeta_even / ((4 * mp.pi) ** (2 * k - 1) * mp.factorial(k - 1))
    bracket = (2 * v ** k * zeta_even
               + mp.mpf(2) ** (3 - 2 * k) * v ** (1 - k) * mp.pi * mp.zeta(2 * k - 1) * comb(2 * k - 2, k - 1)
               - weight * raised.value.real)
    factor = -(mp.mpf(2) ** (k - 1) * d ** (mp.mpf(k - 1) / 2)
               / ((2 * k - 1) * stabilizer_order(reduced) * zeta_even))
    return NumericValue(mp.mpc(factor * bracket), abs(factor) * weight * raised.error)


# orchestration

def compute_period(form: QuadForm, k: int, n: int, config: Config = DEFAULT_CONFIG, mode: str = BOTH,
                   cache: Optional[CoefficientCache] = None) -> PeriodResult:
    """one table cell: exact and/or numeric r_n(f_{k,P})"""
    if mode not in MODES:
        raise DataError(f"unknown mode {mode!r}, expected one of {', '.join(MODES)}")
    _check_range(k, n)
    if k > config.k_max:
        raise UnsupportedError(f"k = {k} exceeds the configured maximum {config.k_max}")
    admissible_point(form)
    exact_result = numeric_result = None
    if mode in (EXACT, BOTH):
        cusp_data = None
        if cusp_form_dimension(2 * k):
            cusp_data, _ = rn_coefficients(k, n, config.series_terms, config.quad_tol, cache)
        exact_result = exact_period(form, k, n, cusp_data, config.series_terms, cache)
    if mode in (NUMERIC, BOTH):
        numeric_result = numeric_fkp_period(form, k, n, config)
    if exact_result is None:
        return numeric_result
    if numeric_result is None:
        return exact_result
    result = PeriodResult(k, n, form, method={'path': BOTH, **exact_result.method})
    result.exact = exact_result.exact
    result.numeric = numeric_result.numeric
    if result.exact is None:
        # exact formula completed numerically: compare the two numeric values
        result.method['formula'] = {'re': float(exact_result.numeric.value.real),
                                    'im': float(exact_result.numeric.value.imag),
                                    'err': float(exact_result.numeric.error)}
        gap = abs(exact_result.numeric.value - numeric_result.numeric.value)
        slack = exact_result.numeric.error + numeric_result.numeric.error
    else:
        gap = abs(to_mpc(result.exact) - result.numeric.value)
        slack = result.numeric.error
    if gap > slack:
        result.method['mismatch'] = float(gap)
        _logger.warning(f"r_{n}(f_({k},{form})): exact and numeric differ by {mp.nstr(gap, 3)}, "
                        f"bound {mp.nstr(slack, 3)}")
    return result


def class_sum_period(d: int, k: int, n: int, config: Config = DEFAULT_CONFIG, mode: str = NUMERIC,
                     skip_inadmissible: bool = False,
                     cache: Optional[CoefficientCache] = None) -> List[PeriodResult]:
    """
    Per-class periods of f_{k,d} = sum over classes of f_{k,P}, followed by the
    summed row (omitted when a class is skipped)
    """
    rows = []
    skipped = []
    for form in enumerate_classes(d):
        try:
            admissible_point(form)
        except ExceptionalSetError:
            if not skip_inadmissible:
                raise
            skipped.append(form)
            continue
        rows.append(compute_period(form, k, n, config, mode, cache))
    if skipped:
        _logger.warning(f"skipped classes {', '.join(map(str, skipped))} of d={d} "
                        f"(CM point on the exceptional set), no summed row")
        return rows
    if rows:
        total = PeriodResult(k, n, None, label=f"sum(d={d})", method={'path': mode, 'classes': len(rows)})
        if all(row.exact is not None for row in rows):
            total.exact = sum((row.exact for row in rows), ExactNumber.coerce(0))
        if all(row.numeric is not None for row in rows):
            total.numeric = NumericValue(mp.fsum(row.numeric.value for row in rows),
                                         mp.fsum(row.numeric.error for row in rows))
        rows.append(total)
    return rows


__all__ = (
    'PeriodResult',
    'PeriodPolynomial',
    'EisensteinPeriodFunction',
    'THEOREM',
    'LEMMA',
    'NUMERIC',
    'EXACT',
    'BOTH',
    'MODES',
    'CHOWLA_SELBERG',
    'SHELLS',
    'cusp_form_dimension',
    'exact_record',
    'admissible_point',
    'eisenstein_period_exact',
    'eisenstein_period_function',
    'eisenstein_odd_polynomial',
    'period_function_value',
    'eichler_cocycle_residual',
    'kz_period_polynomial',
    'kz_periods',
    'local_polynomial',
    'one_sided_polynomial',
    'local_polynomial_cocycle',
    'expected_s_cocycle',
    'raised_local_polynomial',
    'exact_period',
    'numeric_period',
    'numeric_fkp_period',
    'series_evaluator',
    'cusp_basis_form',
    'petersson_norm',
    'rn_coefficients',
    'cohen_series',
    'cohen_relation',
    'kernel_residual',
    'linear_combination_period',
    'period_plusminus',
    'epstein_zeta',
    'epstein_class_number_one',
    'outer_period_identity',
    'outer_period_formula',
    'compute_period',
    'class_sum_period',
)
