"""
Positive definite binary quadratic forms, CM points and the SL2(Z)
geometry of the exceptional set (translates of the imaginary axis)
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
from math import ceil, floor, gcd, isqrt
from typing import Iterator, List, Optional, Tuple

import mpmath as mp
from sympy.ntheory import sqrt_mod

from lhmfperiods.exact import ExactNumber, ExactPoint
from lhmfperiods.exceptions import DataError, ExceptionalSetError, SoftwareError
from lhmfperiods.logger import logger

_logger = logger.getChild('quadforms')

INTERIOR = 'strict-interior'
BOUNDARY = 'boundary'


def _sgn(value) -> int:
    return (value > 0) - (value < 0)


@dataclass(frozen=True)
class GammaMatrix:
    """Integer matrix (a b; c d) with ad - bc = 1"""
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise DataError(f"matrix {self} has determinant "
                            f"{self.a * self.d - self.b * self.c}, expected 1")

    @classmethod
    def identity(cls) -> 'GammaMatrix':
        return cls(1, 0, 0, 1)

    @classmethod
    def S(cls) -> 'GammaMatrix':  # pylint: disable=invalid-name
        return cls(0, -1, 1, 0)

    @classmethod
    def T(cls, t: int = 1) -> 'GammaMatrix':  # pylint: disable=invalid-name
        return cls(1, t, 0, 1)

    def __matmul__(self, other: 'GammaMatrix') -> 'GammaMatrix':
        if not isinstance(other, GammaMatrix):
            return NotImplemented
        return GammaMatrix(self.a * other.a + self.b * other.c,
                           self.a * other.b + self.b * other.d,
                           self.c * other.a + self.d * other.c,
                           self.c * other.b + self.d * other.d)

    def inverse(self) -> 'GammaMatrix':
        return GammaMatrix(self.d, -self.b, -self.c, self.a)

    def psl(self) -> 'GammaMatrix':
        """representative of +-M with c > 0, or c = 0 and d > 0"""
        if self.c < 0 or (self.c == 0 and self.d < 0):
            return GammaMatrix(-self.a, -self.b, -self.c, -self.d)
        return self

    def sgn(self) -> int:
        """sgn(ac) if ac != 0, else sgn(bd), with sgn(0) = 0"""
        if self.a * self.c:
            return _sgn(self.a * self.c)
        return _sgn(self.b * self.d)

    def height(self) -> int:
        """max |entry|"""
        return max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))

    def apply(self, tau):
        """Moebius action on an ExactPoint or a complex number"""
        if isinstance(tau, ExactPoint):
            return tau.apply(self)
        tau = mp.mpc(tau)
        return (self.a * tau + self.b) / (self.c * tau + self.d)

    def j(self, tau):
        """automorphy factor c*tau + d"""
        if isinstance(tau, ExactPoint):
            return tau.tau * self.c + self.d
        return self.c * mp.mpc(tau) + self.d

    def __str__(self):
        return f"({self.a} {self.b}; {self.c} {self.d})"


@dataclass(frozen=True)
class QuadForm:
    """Integral binary quadratic form a x^2 + b x y + c y^2"""
    a: int
    b: int
    c: int

    @classmethod
    def parse(cls, text: str) -> 'QuadForm':
        """'a,b,c' or '[a,b,c]'"""
        try:
            a, b, c = (int(part) for part in text.strip().strip('[]').split(','))
        except ValueError as e:
            raise DataError(f"form must be given as a,b,c integers, got {text!r}") from e
        return cls(a, b, c)

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_positive_definite(self) -> bool:
        return self.disc < 0 and self.a > 0

    def require_positive_definite(self) -> 'QuadForm':
        if not self.is_positive_definite():
            raise DataError(f"form {self} is not positive definite (disc {self.disc})")
        return self

    def __call__(self, x, y=1):
        return self.a * x * x + self.b * x * y + self.c * y * y

    def transform(self, matrix: GammaMatrix) -> 'QuadForm':
        """Q o M, i.e. (x, y) -> Q(alpha x + beta y, gamma x + delta y)"""
        al, be, ga, de = matrix.a, matrix.b, matrix.c, matrix.d
        return QuadForm(self(al, ga),
                        2 * self.a * al * be + self.b * (al * de + be * ga) + 2 * self.c * ga * de,
                        self(be, de))

    def conjugate(self) -> 'QuadForm':
        """[a, -b, c]"""
        return QuadForm(self.a, -self.b, self.c)

    def content(self) -> int:
        return gcd(gcd(self.a, self.b), self.c)

    def as_list(self) -> List[int]:
        return [self.a, self.b, self.c]

    def __str__(self):
        return f"[{self.a},{self.b},{self.c}]"


def reduce(form: QuadForm) -> Tuple[QuadForm, GammaMatrix]:
    """
    Gauss reduction: returns (R, M) with R = form o M reduced,
    |b| <= a <= c and b >= 0 if |b| = a or a = c
    """
    form.require_positive_definite()
    current, matrix = form, GammaMatrix.identity()
    while True:
        t = floor(Fraction(current.a - current.b, 2 * current.a))
        if t:
            step = GammaMatrix.T(t)
            current, matrix = current.transform(step), matrix @ step
        if current.a > current.c or (current.a == current.c and current.b < 0):
            step = GammaMatrix.S()
            current, matrix = current.transform(step), matrix @ step
            continue
        break
    if form.transform(matrix) != current:
        raise SoftwareError(f"reduction of {form} produced an inconsistent matrix {matrix}")
    return current, matrix


def class_of(form: QuadForm) -> QuadForm:
    """reduced representative of the class"""
    return reduce(form)[0]


def check_discriminant(d: int) -> int:
    if d >= 0 or d % 4 not in (0, 1):
        raise DataError(f"invalid negative discriminant {d}, expected d < 0 and d = 0, 1 mod 4")
    return d


@lru_cache(maxsize=256)
def _classes(d: int) -> Tuple[QuadForm, ...]:
    forms = []
    for a in range(1, isqrt(-d // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b * b - d) % (4 * a):
                continue
            c = (b * b - d) // (4 * a)
            if c < a or (a == c and b < 0):
                continue
            forms.append(QuadForm(a, b, c))
    return tuple(sorted(forms, key=QuadForm.as_list))


def enumerate_classes(d: int) -> List[QuadForm]:
    """all reduced positive definite forms of discriminant d, imprimitive included"""
    return list(_classes(check_discriminant(d)))


def _form_automorphs(form: QuadForm) -> List[GammaMatrix]:
    bound = 2 * (abs(form.a) + abs(form.b) + abs(form.c))
    span = range(-bound, bound + 1)
    first = [(x, y) for x in span for y in span if form(x, y) == form.a]
    second = [(x, y) for x in span for y in span if form(x, y) == form.c]
    found = []
    for al, ga in first:
        for be, de in second:
            if al * de - be * ga != 1:
                continue
            matrix = GammaMatrix(al, be, ga, de)
            if form.transform(matrix) == form:
                found.append(matrix)
    return found


@lru_cache(maxsize=256)
def stabilizer_order(form: QuadForm) -> int:
    """order of the stabilizer of the form in PSL2(Z)"""
    reduced = class_of(form)
    order = len(_form_automorphs(reduced)) // 2
    content = reduced.content()
    primitive = QuadForm(reduced.a // content, reduced.b // content, reduced.c // content)
    expected = {QuadForm(1, 1, 1): 3, QuadForm(1, 0, 1): 2}.get(primitive, 1)
    if order != expected:
        raise SoftwareError(f"stabilizer of {form}: brute force found {order}, expected {expected}")
    return order


@dataclass(frozen=True)
class CMPoint(ExactPoint):
    """CM point of a positive definite form, root of form(tau, 1) in the upper half plane"""
    form: QuadForm = None

    def apply(self, matrix: GammaMatrix) -> 'CMPoint':
        # M tau_Q = tau_(Q o M^-1)
        point = ExactPoint.apply(self, matrix)
        return CMPoint(point.u, point.v_squared, self.form.transform(matrix.inverse()))

    def translate(self, t: int) -> 'CMPoint':
        return self.apply(GammaMatrix.T(t))

    @property
    def disc(self) -> int:
        return self.form.disc


def cm_point(form: QuadForm) -> CMPoint:
    """tau_P = (-b + i sqrt|d|)/(2a), checked exactly"""
    form.require_positive_definite()
    point = CMPoint(Fraction(-form.b, 2 * form.a), Fraction(-form.disc, 4 * form.a ** 2), form)
    tau = point.tau
    if not (tau * tau * form.a + tau * form.b + form.c).is_zero():
        raise SoftwareError(f"CM point {point} is not a root of {form}")
    return point


def _orbit_forms(form: QuadForm, bound: int, both_signs: bool) -> List[QuadForm]:
    form.require_positive_definite()
    target = class_of(form)
    d = form.disc
    single_class = len(enumerate_classes(d)) == 1
    found = []
    for a in range(1, bound + 1):
        modulus = 4 * a
        roots = sqrt_mod(d % modulus, modulus, all_roots=True) or []
        candidates = set()
        for root in roots:
            for b in (root, root - modulus):
                if -a < b <= a or (both_signs and b == -a):
                    candidates.add(b)
        for b in sorted(candidates):
            candidate = QuadForm(a, b, (b * b - d) // modulus)
            if single_class or class_of(candidate) == target:
                found.append(candidate)
    return found


def orbit_forms_bounded(form: QuadForm, bound: int) -> List[QuadForm]:
    """forms [a,b,c] in the class of form with 0 < a <= bound and |b| <= a"""
    return _orbit_forms(form, bound, both_signs=True)


def t_orbit_representatives(form: QuadForm, bound: int) -> List[QuadForm]:
    """one form per orbit under translations: 0 < a <= bound, -a < b <= a"""
    return _orbit_forms(form, bound, both_signs=False)


def _coordinates(tau):
    if isinstance(tau, ExactPoint):
        return True, tau.u, tau.abs_squared, tau.v_squared
    tau = mp.mpc(tau)
    if tau.imag <= 0:
        raise DataError(f"point {tau} is not in the upper half plane")
    return False, tau.real, tau.real ** 2 + tau.imag ** 2, tau.imag ** 2


def _coprime_pairs(v_squared, slack=1) -> Iterator[Tuple[int, int]]:
    """coprime a, c > 0 with 4 (ac)^2 v^2 <= slack"""
    limit = 1
    while 4 * limit * limit * v_squared <= slack:
        limit += 1
    for a in range(1, limit):
        for c in range(1, limit // a + 1):
            if gcd(a, c) == 1 and 4 * (a * c) ** 2 * v_squared <= slack:
                yield a, c


def _row_family(a: int, c: int, u, abs_squared):
    """
    M_t = (a, b0 + t a; c, d0 + t c); returns (b0, d0, coefficients) with
    Re(M_t tau) * |c tau + d|^2 = ac t^2 + lin t + const
    """
    d0 = pow(a, -1, c) if c > 1 else 0
    b0 = (a * d0 - 1) // c
    lin = 2 * a * c * u + a * d0 + b0 * c
    const = a * c * abs_squared + (a * d0 + c * b0) * u + b0 * d0
    return b0, d0, lin, const


def _t_window(ac: int, lin, const, exact: bool) -> range:
    disc = lin * lin - 4 * ac * const
    if disc < 0:
        return range(0)
    root = mp.sqrt(mp.mpf(disc.numerator) / disc.denominator) if exact else mp.sqrt(disc)
    center = -(mp.mpf(lin.numerator) / lin.denominator if exact else lin)
    lo = (center - root) / (2 * ac)
    hi = (center + root) / (2 * ac)
    return range(int(mp.floor(lo)) - 1, int(mp.ceil(hi)) + 2)


def _ac_positive(tau) -> Iterator[Tuple[GammaMatrix, int]]:
    """(M, sign Re(M tau)) for PSL matrices with ac > 0 and Re(M tau) <= 0"""
    exact, u, abs_squared, v_squared = _coordinates(tau)
    for a, c in _coprime_pairs(v_squared):
        b0, d0, lin, const = _row_family(a, c, u, abs_squared)
        for t in _t_window(a * c, lin, const, exact):
            value = a * c * t * t + lin * t + const
            if value <= 0:
                yield GammaMatrix(a, b0 + t * a, c, d0 + t * c), _sgn(value)


def enumerate_exceptional_matrices(tau, mode: str = INTERIOR) -> List[GammaMatrix]:
    """
    strict-interior: PSL representatives with ac > 0 and Re(M tau) < 0.
    boundary: all PSL representatives with Re(M tau) = 0 (exact input only).
    """
    if mode == INTERIOR:
        return [matrix for matrix, sign in _ac_positive(tau) if sign < 0]
    if mode != BOUNDARY:
        raise DataError(f"unknown enumeration mode {mode!r}")
    if not isinstance(tau, ExactPoint):
        raise DataError("boundary enumeration needs exact coordinates")
    found = [matrix for matrix, sign in _ac_positive(tau) if sign == 0]
    found += [(GammaMatrix.S() @ matrix).psl() for matrix in found]
    if tau.u.denominator == 1:
        shift = GammaMatrix.T(-int(tau.u))
        found += [shift, (GammaMatrix.S() @ shift).psl()]
    return found


def exceptional_sign_matrices(tau: ExactPoint) -> List[Tuple[GammaMatrix, int]]:
    """ac > 0 matrices with Re(M tau) <= 0 together with the sign of Re(M tau)"""
    return list(_ac_positive(tau))


def is_on_exceptional_set(tau) -> bool:
    """exact decision tau in the union of M(iR+)"""
    if not isinstance(tau, ExactPoint):
        raise DataError("exceptional set membership needs exact coordinates")
    if tau.u.denominator == 1:
        return True
    return any(sign == 0 for _, sign in _ac_positive(tau))


def require_off_exceptional_set(tau: ExactPoint, what: str = "point") -> ExactPoint:
    if is_on_exceptional_set(tau):
        raise ExceptionalSetError(
            f"{what} {tau} lies on the exceptional set; principal-value "
            f"periods are not supported")
    return tau


def near_exceptional_set(tau, guard: float) -> Optional[str]:
    """
    Describes the closest exceptional geodesic if |Re(M tau)|/Im(M tau) < guard
    for some M, else None.  Numeric input.
    """
    tau = mp.mpc(tau)
    u, v = tau.real, tau.imag
    if abs(u - mp.nint(u)) < guard * v:
        return f"vertical line u = {int(mp.nint(u))}"
    abs_squared = u * u + v * v
    for a, c in _coprime_pairs(v * v, slack=1 / (1 - guard) ** 2):
        _, _, lin, const = _row_family(a, c, u, abs_squared)
        vertex = -lin / (2 * a * c)
        for t in range(int(mp.floor(vertex)) - 1, int(mp.ceil(vertex)) + 2):
            value = a * c * t * t + lin * t + const
            if abs(value) < guard * v:
                return f"circle of M^-1(iR+), M with rows ({a}, *), ({c}, *)"
        for t in _t_window(a * c, lin, const, False):
            value = a * c * t * t + lin * t + const
            if abs(value) < guard * v:
                return f"circle of M^-1(iR+), M with rows ({a}, *), ({c}, *)"
    return None


def hurwitz_class_number(d: int) -> Fraction:
    """sum over classes of 1/|stabilizer|"""
    return sum((Fraction(1, stabilizer_order(form)) for form in enumerate_classes(d)),
               Fraction(0))


def canonical_strip_form(form: QuadForm) -> Tuple[QuadForm, int]:
    """
    Translate of form (same class) whose CM point has 0 <= u < 1,
    together with the translation t: new form is form o T^-t
    """
    point = cm_point(form)
    t = -floor(point.u)
    return form.transform(GammaMatrix.T(-t)), t


def bounded_rows(bound: int) -> Iterator[Tuple[int, int, int, int]]:
    """
    Bottom rows (c, d) of PSL2(Z) with max(c, |d|) <= bound, ordered by that
    maximum, each with a completion (a0, b0), a0 d - b0 c = 1
    """
    yield 0, 1, 1, 0
    for shell in range(1, bound + 1):
        rows = {(shell, d) for d in range(-shell, shell + 1)}
        rows |= {(c, d) for c in range(1, shell) for d in (-shell, shell)}
        for c, d in sorted(rows):
            if gcd(c, d) != 1:
                continue
            a0 = pow(d % c, -1, c) if c > 1 else 0
            yield c, d, a0, (a0 * d - 1) // c


def t_window(c: int, d: int, a0: int, b0: int, bound: int) -> range:
    """t with |a0 + t c| <= bound and |b0 + t d| <= bound"""
    lo, hi = -bound, bound
    for base, step in ((a0, c), (b0, d)):
        if step > 0:
            lo, hi = max(lo, ceil((-bound - base) / step)), min(hi, floor((bound - base) / step))
        elif step < 0:
            lo, hi = max(lo, ceil((bound - base) / step)), min(hi, floor((-bound - base) / step))
        elif abs(base) > bound:
            return range(0)
    return range(lo, hi + 1)


def reduce_point(tau) -> Tuple[mp.mpc, GammaMatrix]:
    """(M tau, M) with M tau in the closed standard fundamental domain"""
    tau = mp.mpc(tau)
    if tau.imag <= 0:
        raise DataError(f"point {tau} is not in the upper half plane")
    matrix = GammaMatrix.identity()
    for _ in range(10000):
        t = -int(mp.nint(tau.real))
        if t:
            tau, matrix = tau + t, GammaMatrix.T(t) @ matrix
        if abs(tau) >= 1:
            return tau, matrix
        tau, matrix = -1 / tau, GammaMatrix.S() @ matrix
    raise SoftwareError(f"point reduction did not terminate for {tau}")


__all__ = (
    'GammaMatrix',
    'QuadForm',
    'CMPoint',
    'INTERIOR',
    'BOUNDARY',
    'reduce',
    'class_of',
    'check_discriminant',
    'enumerate_classes',
    'stabilizer_order',
    'cm_point',
    'orbit_forms_bounded',
    't_orbit_representatives',
    'enumerate_exceptional_matrices',
    'exceptional_sign_matrices',
    'is_on_exceptional_set',
    'require_off_exceptional_set',
    'near_exceptional_set',
    'hurwitz_class_number',
    'canonical_strip_form',
    'bounded_rows',
    't_window',
    'reduce_point',
)
