"""
q-expansions of level one modular forms, Eichler integrals,
the cusp forms f_{k,P} and Petersson's Poincare series
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

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, comb, factorial
from typing import Dict, List, NamedTuple, Optional, Tuple

import mpmath as mp
from sympy import divisor_sigma

from lhmfperiods.cache import CoefficientCache
from lhmfperiods.exact import ExactPoint, ExpFourierExpr, bernoulli_number, raise_closed_sum, to_mpc
from lhmfperiods.exceptions import DataError, PoleProximityError
from lhmfperiods.logger import logger
from lhmfperiods.quadforms import QuadForm, bounded_rows, reduce_point, t_orbit_representatives, t_window

_logger = logger.getChild('modforms')

HOLOMORPHIC = 'holomorphic'
NONHOLOMORPHIC = 'nonholomorphic'
DIRECT = 'direct'
RELATION = 'relation'

MAX_FAR_TERMS = 2000
ORBIT_TAIL_TOL = 1e-8
MAX_ORBIT_BOUND = 10000


class NumericValue(NamedTuple):
    """Complex value with an absolute error bound (or estimate, where documented)"""
    value: mp.mpc
    error: mp.mpf

    def scale(self, factor) -> 'NumericValue':
        factor = to_mpc(factor)
        return NumericValue(self.value * factor, self.error * abs(factor))

    def combine(self, other: 'NumericValue', sign: int = 1) -> 'NumericValue':
        return NumericValue(self.value + sign * other.value, self.error + other.error)

    def conjugate(self) -> 'NumericValue':
        return NumericValue(mp.conj(self.value), self.error)

    def agrees(self, target, slack=0) -> bool:
        """|value - target| within the error plus slack"""
        return abs(self.value - to_mpc(target)) <= self.error + slack


def as_point(tau) -> mp.mpc:
    """numeric point of the upper half plane"""
    value = tau.to_mpc() if isinstance(tau, ExactPoint) else mp.mpc(tau)
    if value.imag <= 0:
        raise DataError(f"point {value} is not in the upper half plane")
    return value


def _geometric_tail(scale, beta, rho, last: int):
    """bound of sum_(n > last) scale * n**beta * rho**n"""
    n = last + 1
    ratio = rho * (mp.mpf(n + 1) / n) ** max(beta, 0)
    if ratio >= 1:
        return mp.inf
    return mp.mpf(scale) * mp.mpf(n) ** beta * rho ** n / (1 - ratio)


@dataclass(frozen=True)
class FourierSeries:
    """
    Truncated q-expansion constant_term + sum c(n) q^n of weight 2k,
    with a growth bound |c(n)| <= K n**alpha given as growth = (K, alpha)
    """
    weight: int
    constant_term: object
    coefficients: Tuple
    growth: Tuple
    kind: str = 'series'

    def __post_init__(self):
        if self.weight < 2 or self.weight % 2:
            raise DataError(f"weight must be even and positive, got {self.weight}")
        if not self.coefficients:
            raise DataError("a q-expansion needs at least one coefficient")

    @property
    def k(self) -> int:
        return self.weight // 2

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def coeff(self, n: int):
        """c(n), 1 <= n <= order"""
        if not 1 <= n <= self.order:
            raise DataError(f"coefficient index {n} outside 1..{self.order}")
        return self.coefficients[n - 1]

    def scaled(self, factor, kind: Optional[str] = None) -> 'FourierSeries':
        """factor * f; exact factors keep exact coefficients"""
        if isinstance(factor, (int, Fraction)):
            coefficients = tuple(c * factor for c in self.coefficients)
            constant = self.constant_term * factor
        else:
            factor = to_mpc(factor)
            coefficients = tuple(to_mpc(c) * factor for c in self.coefficients)
            constant = to_mpc(self.constant_term) * factor
        scale, alpha = self.growth
        return FourierSeries(self.weight, constant, coefficients,
                             (mp.mpf(scale) * abs(to_mpc(factor)), alpha),
                             kind or f"{self.kind}*c")

    def truncated(self, order: int) -> 'FourierSeries':
        if not 1 <= order <= self.order:
            raise DataError(f"truncation order {order} outside 1..{self.order}")
        return FourierSeries(self.weight, self.constant_term, self.coefficients[:order],
                             self.growth, self.kind)


def _cached_coefficients(cache: Optional[CoefficientCache], kind: str, params: dict, build):
    if cache is not None:
        stored = cache.get(kind, params)
        if stored is not None:
            return tuple(Fraction(c) for c in stored)
    coefficients = build()
    if cache is not None:
        cache.put(kind, params, [str(c) for c in coefficients])
    return coefficients


def eisenstein_coeffs(k: int, order: int, cache: Optional[CoefficientCache] = None) -> FourierSeries:
    """E_2k = 1 - (4k/B_2k) sum sigma_(2k-1)(n) q^n, exact coefficients"""
    if k < 2:
        raise DataError(f"Eisenstein series need k >= 2, got {k}")
    if order < 1:
        raise DataError(f"truncation order must be positive, got {order}")
    scale = -Fraction(4 * k) / bernoulli_number(2 * k)

    def build():
        return tuple(scale * int(divisor_sigma(n, 2 * k - 1)) for n in range(1, order + 1))

    coefficients = _cached_coefficients(cache, 'eisenstein', {'k': k, 'order': order}, build)
    # sigma_(2k-1)(n) <= zeta(2k-1) n^(2k-1) < 2 n^(2k-1)
    return FourierSeries(2 * k, Fraction(1), coefficients,
                         (2 * abs(mp.mpf(scale.numerator) / scale.denominator), 2 * k - 1),
                         kind=f"E{2 * k}")


def delta_coeffs(order: int, cache: Optional[CoefficientCache] = None) -> FourierSeries:
    """Ramanujan tau(n) from q prod (1 - q^n)^24"""
    if order < 1:
        raise DataError(f"truncation order must be positive, got {order}")

    def build():
        product = [0] * order
        product[0] = 1
        for n in range(1, order):
            for _ in range(24):
                for exp in range(order - 1, n - 1, -1):
                    product[exp] -= product[exp - n]
        return tuple(Fraction(c) for c in product)

    coefficients = _cached_coefficients(cache, 'delta', {'order': order}, build)
    # |tau(n)| <= d(n) n^(11/2) <= 2 n^6
    return FourierSeries(12, Fraction(0), coefficients, (2, 6), kind='Delta')


def _q_powers(tau, order: int) -> List[mp.mpc]:
    q = mp.expjpi(2 * tau)
    powers, power = [], mp.mpc(1)
    for _ in range(order):
        power *= q
        powers.append(power)
    return powers


def eval_series(f: FourierSeries, tau) -> NumericValue:
    """constant_term + sum c(n) e(n tau), ascending n"""
    tau = as_point(tau)
    powers = _q_powers(tau, f.order)
    value = to_mpc(f.constant_term) + mp.fsum(to_mpc(c) * p for c, p in zip(f.coefficients, powers))
    scale, alpha = f.growth
    return NumericValue(value, _geometric_tail(scale, alpha, mp.exp(-2 * mp.pi * tau.imag), f.order))


def incomplete_gamma_int(s: int, x):
    """Gamma(s, x) = (s-1)! e^-x sum_(j<s) x^j/j! for integer s >= 1"""
    if s < 1:
        raise DataError(f"incomplete Gamma needs an integer s >= 1, got {s}")
    if isinstance(x, (int, Fraction)) and x == 0:
        return factorial(s - 1)
    x = mp.mpmathify(x)
    return factorial(s - 1) * mp.exp(-x) * mp.fsum(x ** j / factorial(j) for j in range(s))


def eichler_holomorphic(f: FourierSeries, tau) -> NumericValue:
    """sum_(n>=1) c(n) n^(1-2k) e(n tau)"""
    tau = as_point(tau)
    k = f.k
    powers = _q_powers(tau, f.order)
    value = mp.fsum(to_mpc(c) * mp.mpf(n) ** (1 - 2 * k) * p
                    for n, (c, p) in enumerate(zip(f.coefficients, powers), 1))
    scale, alpha = f.growth
    rho = mp.exp(-2 * mp.pi * tau.imag)
    return NumericValue(value, _geometric_tail(scale, alpha + 1 - 2 * k, rho, f.order))


def eichler_nonholomorphic(f: FourierSeries, tau) -> NumericValue:
    """-sum_(n>=1) conj(c(n)) (4 pi n)^(1-2k) Gamma(2k-1, 4 pi n v) e(-n tau)"""
    tau = as_point(tau)
    k = f.k
    v = tau.imag
    terms = []
    for n, c in enumerate(f.coefficients, 1):
        x = 4 * mp.pi * n
        terms.append(mp.conj(to_mpc(c)) * x ** (1 - 2 * k)
                     * incomplete_gamma_int(2 * k - 1, x * v) * mp.expjpi(-2 * n * tau))
    scale, alpha = f.growth
    scale = (mp.mpf(scale) * factorial(2 * k - 1) * max(1, 4 * mp.pi * v) ** (2 * k - 2)
             / (4 * mp.pi) ** (2 * k - 1))
    rho = mp.exp(-2 * mp.pi * v)
    return NumericValue(-mp.fsum(terms), _geometric_tail(scale, alpha - 1, rho, f.order))


@lru_cache(maxsize=512)
def _raised_gamma_mode(k: int, n: int) -> ExpFourierExpr:
    return raise_closed_sum(ExpFourierExpr.gamma_mode(k, n), k)


def _raised_mode_scale(k: int, v):
    # |R^(k-1) e(n tau)| <= scale * n^(k-1) e^(-2 pi n v)
    return (v ** (1 - k) * factorial(k - 1)
            * mp.fsum(comb(2 * k - 2 - j, k - 1) * (4 * mp.pi * v) ** j / factorial(j)
                      for j in range(k)))


def _raised_holomorphic(f: FourierSeries, tau) -> NumericValue:
    k = f.k
    v = tau.imag
    weights = [comb(2 * k - 2 - j, k - 1) / mp.factorial(j) for j in range(k)]
    lead = (-v) ** (1 - k) * factorial(k - 1)
    powers = _q_powers(tau, f.order)
    terms = []
    for n, (c, p) in enumerate(zip(f.coefficients, powers), 1):
        x = 4 * mp.pi * n * v
        poly = mp.fsum(w * x ** j for j, w in enumerate(weights))
        terms.append(to_mpc(c) * mp.mpf(n) ** (1 - 2 * k) * poly * p)
    scale, alpha = f.growth
    rho = mp.exp(-2 * mp.pi * v)
    error = _geometric_tail(mp.mpf(scale) * _raised_mode_scale(k, v), alpha - k, rho, f.order)
    return NumericValue(lead * mp.fsum(terms), error)


def _raised_nonholomorphic(f: FourierSeries, tau) -> NumericValue:
    k = f.k
    terms = [mp.conj(to_mpc(c)) * (4 * mp.pi * n) ** (1 - 2 * k) * _raised_gamma_mode(k, n).evaluate(tau)
             for n, c in enumerate(f.coefficients, 1)]
    scale, alpha = f.growth
    rho = mp.exp(-2 * mp.pi * tau.imag)
    error = _geometric_tail(mp.mpf(scale) * _raised_mode_scale(k, tau.imag), alpha - k, rho, f.order)
    return NumericValue(-mp.fsum(terms), error * factorial(2 * k - 2) / (4 * mp.pi) ** (2 * k - 1))


def raised_eichler(f: FourierSeries, tau, which: str = HOLOMORPHIC, path: str = DIRECT) -> NumericValue:
    """
    R^(k-1)_(2-2k) of the holomorphic or the non-holomorphic Eichler integral.
    path 'direct' raises termwise, 'relation' goes through
    R^(k-1) f* = -(2k-2)!/(4 pi)^(2k-1) conj(R^(k-1) E_f)
    """
    tau = as_point(tau)
    k = f.k
    if which not in (HOLOMORPHIC, NONHOLOMORPHIC):
        raise DataError(f"unknown Eichler integral {which!r}")
    if path not in (DIRECT, RELATION):
        raise DataError(f"unknown raising path {path!r}")
    factor = mp.mpf(factorial(2 * k - 2)) / (4 * mp.pi) ** (2 * k - 1)
    if which == HOLOMORPHIC:
        if path == DIRECT:
            return _raised_holomorphic(f, tau)
        return _raised_nonholomorphic(f, tau).conjugate().scale(-1 / factor)
    if path == DIRECT:
        return _raised_nonholomorphic(f, tau)
    return _raised_holomorphic(f, tau).conjugate().scale(-factor)


def periodic_power_sum(j: int, x):
    """sum over integers t of (x + t)^-j, j >= 1 (symmetric summation for j = 1)"""
    if j < 1:
        raise DataError(f"power must be positive, got {j}")
    if j == 1:
        return mp.pi * mp.cot(mp.pi * x)
    return ((-1) ** j * mp.psi(j - 1, x) + mp.psi(j - 1, 1 - x)) / mp.factorial(j - 1)


class _NearOrbit(NamedTuple):
    form: QuadForm
    alpha: mp.mpc
    beta: mp.mpc
    upper: List[mp.mpc]
    lower: List[mp.mpc]


class FkPEvaluator:
    """
    f_{k,P}(z) = |d|^(k-1/2)/pi sum_(Q in [P]) Q(z,1)^-k for Im z >= y_min.

    Orbits under translation with a <= sqrt|d|/y_min are summed in closed
    form through periodic_power_sum; the others through the q-expansion
    sum_m c_m e(mz) of their sum, precomputed in double precision.
    Forms with a > orbit_bound enter only through the tail bound.
    """

    Y_MIN = Fraction(1, 2)

    def __init__(self, form: QuadForm, k: int, orbit_bound: int = 1500,
                 pole_guard: float = 1e-3, tol: float = 1e-12):
        form.require_positive_definite()
        if k < 2:
            raise DataError(f"f_(k,P) needs k >= 2, got {k}")
        self.form = form
        self.k = k
        self.orbit_bound = orbit_bound
        self.pole_guard = pole_guard
        self.y_min = mp.mpf(self.Y_MIN.numerator) / self.Y_MIN.denominator
        d = -form.disc
        self.prefactor = mp.mpf(d) ** (k - mp.mpf(1) / 2) / mp.pi
        representatives = t_orbit_representatives(form, orbit_bound)
        split = mp.sqrt(d) / self.y_min
        self._near = [self._near_orbit(q) for q in representatives if q.a <= split]
        self._density = mp.mpf(len(representatives)) / orbit_bound
        self._far_coeffs, self._far_scale = self._far_expansion(
            [q for q in representatives if q.a > split], tol)
        self._values: Dict[Tuple, NumericValue] = {}
        _logger.debug(f"f_({k},{form}): {len(representatives)} translation orbits, "
                      f"{len(self._near)} in closed form, {len(self._far_coeffs)} Fourier terms")

    def _near_orbit(self, q: QuadForm) -> _NearOrbit:
        k = self.k
        alpha = mp.mpc(-q.b, mp.sqrt(-q.disc)) / (2 * q.a)
        beta = mp.conj(alpha)
        delta = alpha - beta
        lead = mp.mpf(q.a) ** -k
        # principal parts of (z - alpha)^-k (z - beta)^-k
        weights = [(-1) ** (k - j) * comb(2 * k - 1 - j, k - j) * lead for j in range(1, k + 1)]
        upper = [w * delta ** (j - 2 * k) for j, w in enumerate(weights, 1)]
        lower = [w * (-delta) ** (j - 2 * k) for j, w in enumerate(weights, 1)]
        return _NearOrbit(q, alpha, beta, upper, lower)

    def _far_expansion(self, far: List[QuadForm], tol: float):
        if not far:
            return [], 0
        k = self.k
        fp = mp.fp
        by_a: Dict[int, List[int]] = {}
        for q in far:
            by_a.setdefault(q.a, []).append(q.b)
        weight = fp.fsum(len(bs) * fp.mpf(a) ** -k for a, bs in by_a.items())
        norm = (2 * fp.pi) ** (2 * k) / factorial(2 * k - 1)
        # |c_m e(mz)| <= weight * norm * m^(2k-1) e^(-pi m y_min)
        rho = mp.exp(-mp.pi * self.y_min)
        terms = 1
        while terms < MAX_FAR_TERMS and _geometric_tail(weight * norm, 2 * k - 1, rho, terms) > tol / 100:
            terms += 1
        sqrt_d = fp.sqrt(-self.form.disc)
        coeffs = [0j] * terms
        for a, bs in sorted(by_a.items()):
            eta = sqrt_d / (2 * a)
            lead = fp.mpf(a) ** -k
            for m in range(1, terms + 1):
                phase = fp.fsum(fp.expjpi(m * b / a) for b in bs)
                coeffs[m - 1] += lead * m ** (2 * k - 1) * fp.hyp0f1(k + 0.5, (fp.pi * m * eta) ** 2) * phase
        sign = (-1) ** k * norm
        coeffs = [sign * c for c in coeffs]
        return coeffs, weight * norm

    def _far_tail(self, y):
        # |c_m e(m z)| <= scale * m^(2k-1) e^(-pi m (2y - y_min))
        if not self._far_coeffs:
            return mp.mpf(0)
        rho = mp.exp(-mp.pi * (2 * y - self.y_min))
        return _geometric_tail(self._far_scale, 2 * self.k - 1, rho, len(self._far_coeffs))

    def _orbit_tail(self, y):
        k = self.k
        base = self._density * mp.mpf(self.orbit_bound) ** (1 - k) / (k - 1)
        smooth = y ** (1 - 2 * k) * mp.sqrt(mp.pi) * mp.gamma(k - mp.mpf(1) / 2) / mp.gamma(k)
        fourier = ((2 * mp.pi) ** (2 * k) / mp.factorial(2 * k - 1)
                   * mp.polylog(1 - 2 * k, mp.exp(-2 * mp.pi * y)))
        return base * min(smooth, fourier)

    def _evaluate(self, z) -> NumericValue:
        near = []
        for orbit in self._near:
            offset = z - orbit.alpha
            if abs(offset - mp.nint(offset.real)) < self.pole_guard:
                raise PoleProximityError(
                    f"f_({self.k},{self.form}) evaluated within {self.pole_guard} of the pole "
                    f"{orbit.alpha + mp.nint(offset.real)} of {orbit.form}",
                    pole=orbit.alpha + mp.nint(offset.real), form=orbit.form)
            near.extend(w * periodic_power_sum(j, offset) for j, w in enumerate(orbit.upper, 1))
            near.extend(w * periodic_power_sum(j, z - orbit.beta) for j, w in enumerate(orbit.lower, 1))
        far = [mp.mpc(c) * mp.expjpi(2 * m * z) for m, c in enumerate(self._far_coeffs, 1)]
        rounding = mp.mpf(2) ** -50 * mp.fsum(abs(t) for t in far)
        value = self.prefactor * (mp.fsum(near) + mp.fsum(far))
        error = self.prefactor * (self._far_tail(z.imag) + rounding + self._orbit_tail(z.imag))
        return NumericValue(value, error)

    def __call__(self, z) -> NumericValue:
        z = as_point(z)
        key = (z.real, z.imag)
        cached = self._values.get(key)
        if cached is not None:
            return cached
        if z.imag >= self.y_min:
            result = self._evaluate(z)
        else:
            # f(z) = (cz + d)^-2k f(Mz)
            w, matrix = reduce_point(z)
            result = self._evaluate(w).scale(matrix.j(z) ** (-2 * self.k))
        self._values[key] = result
        return result


def orbit_bound_for(k: int, orbit_bound: int, tol: float = ORBIT_TAIL_TOL) -> int:
    """
    smallest A >= orbit_bound with A^(1-k)/(k-1) <= tol, the size of the truncated
    orbit tail; raised at most to MAX_ORBIT_BOUND
    """
    if k < 2:
        raise DataError(f"f_(k,P) needs k >= 2, got {k}")
    needed = ceil((tol * (k - 1)) ** (-1 / (k - 1)))
    return max(orbit_bound, min(needed, MAX_ORBIT_BOUND))


@lru_cache(maxsize=64)
def fkp_evaluator(form: QuadForm, k: int, orbit_bound: int = 1500,
                  pole_guard: float = 1e-3, tol: float = 1e-12) -> FkPEvaluator:
    """shared evaluator per parameter set"""
    return FkPEvaluator(form, k, orbit_bound, pole_guard, tol)


def eval_fkP(form: QuadForm, k: int, z, orbit_bound: int = 1500,
             pole_guard: float = 1e-3, tol: float = 1e-12) -> NumericValue:
    """f_{k,P}(z) with error bound"""
    return fkp_evaluator(form, k, orbit_bound, pole_guard, tol)(z)


def eval_H_poincare(k: int, ell: int, z, tau, bound: int = 400,
                    pole_guard: float = 1e-3, safety: float = 10.0) -> NumericValue:
    """
    Petersson's Poincare series
    sum over SL2(Z) of (c tau + d)^(2 ell) Im(M tau)^(k+ell) (z - M tau)^(ell-k) (z - conj(M tau))^(-ell-k),
    truncated to max|entry| <= bound.  The error is a heuristic estimate.
    """
    if k < 2 or abs(ell) > k:
        raise DataError(f"Poincare series need k >= 2 and |l| <= k, got k={k}, l={ell}")
    zc, tc = complex(as_point(z)), complex(as_point(tau))
    half = bound // 2
    total = partial = last = 0j
    for c, d, a0, b0 in bounded_rows(bound):
        j = c * tc + d
        w0 = (a0 * tc + b0) / j
        factor = j ** (2 * ell) * w0.imag ** (k + ell)
        shell = max(c, abs(d))
        for t in t_window(c, d, a0, b0, bound):
            w = w0 + t
            if abs(zc - w) < pole_guard:
                raise PoleProximityError(f"Poincare series evaluated within {pole_guard} of the pole {w}",
                                         pole=w)
            term = factor * (zc - w) ** (ell - k) * (zc - w.conjugate()) ** (-ell - k)
            total += term
            if max(shell, abs(a0 + t * c), abs(b0 + t * d)) <= half:
                partial += term
            if shell == bound:
                last += term
    estimate = max(safety * abs(last), abs(total - partial)) * 2
    _logger.debug(f"H_({k},{ell}) bound {bound}: last shell {abs(last):.3e}, "
                  f"halving difference {abs(total - partial):.3e}")
    return NumericValue(mp.mpc(2 * total), mp.mpf(estimate))


__all__ = (
    'NumericValue',
    'FourierSeries',
    'FkPEvaluator',
    'HOLOMORPHIC',
    'NONHOLOMORPHIC',
    'DIRECT',
    'RELATION',
    'as_point',
    'eisenstein_coeffs',
    'delta_coeffs',
    'eval_series',
    'incomplete_gamma_int',
    'eichler_holomorphic',
    'eichler_nonholomorphic',
    'raised_eichler',
    'periodic_power_sum',
    'MAX_ORBIT_BOUND',
    'orbit_bound_for',
    'fkp_evaluator',
    'eval_fkP',
    'eval_H_poincare',
)
