"""
Exact arithmetic core: rationals, the fields Q(i, sqrt(s)), Bernoulli
machinery, Laurent polynomials with the weight 2-2k slash action and
two symbolic algebras on which the Maass raising operator acts exactly.
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
from math import comb, factorial, floor
from typing import Dict, Iterable, Tuple, Union

import mpmath as mp
from sympy import factorint

from lhmfperiods.exceptions import DataError, DiscriminantMismatchError
from lhmfperiods.logger import logger

_logger = logger.getChild('exact')

Rational = Union[int, Fraction]


@lru_cache(maxsize=1024)
def squarefree_decomposition(n: int) -> Tuple[int, int]:
    """returns (r, s) with n = r**2 * s and s squarefree"""
    if n <= 0:
        raise DataError(f"squarefree decomposition needs a positive integer, got {n}")
    root, core = 1, 1
    for prime, exp in factorint(n).items():
        root *= prime ** (exp // 2)
        if exp % 2:
            core *= prime
    return root, core


def _to_mpf(q: Fraction):
    return mp.mpf(q.numerator) / q.denominator


def _fmt(coeff: Fraction, unit: str) -> str:
    if not unit:
        return str(coeff)
    if coeff == 1:
        return unit
    if coeff == -1:
        return f"-{unit}"
    return f"{coeff}*{unit}"


class ExactNumber:
    """
    Element w + x*sqrt(s) + i*(y + z*sqrt(s)) of Q(i, sqrt(s)), s squarefree.

    Elements without a square root part carry s = 1 and mix freely with
    any field; mixing two different nontrivial radicands is an error.
    """

    __slots__ = ('w', 'x', 'y', 'z', 'radicand')

    def __init__(self, w: Rational = 0, x: Rational = 0,
                 y: Rational = 0, z: Rational = 0, radicand: int = 1):
        w, x, y, z = Fraction(w), Fraction(x), Fraction(y), Fraction(z)
        if radicand < 1:
            raise DataError(f"radicand must be positive, got {radicand}")
        root, core = squarefree_decomposition(radicand)
        x, z = x * root, z * root
        if core == 1:
            w, y, x, z = w + x, y + z, Fraction(0), Fraction(0)
        self._set(w, x, y, z, core)

    def _set(self, w, x, y, z, radicand):
        if not x and not z:
            radicand = 1
        self.w, self.x, self.y, self.z, self.radicand = w, x, y, z, radicand

    @classmethod
    def _make(cls, w, x, y, z, radicand) -> 'ExactNumber':
        obj = cls.__new__(cls)
        obj._set(w, x, y, z, radicand)
        return obj

    @classmethod
    def coerce(cls, value) -> 'ExactNumber':
        """int, Fraction or ExactNumber to ExactNumber"""
        if isinstance(value, ExactNumber):
            return value
        if isinstance(value, (int, Fraction)):
            return cls._make(Fraction(value), Fraction(0), Fraction(0), Fraction(0), 1)
        raise DataError(f"cannot represent {value!r} exactly")

    @classmethod
    def rational(cls, value: Rational) -> 'ExactNumber':
        """embed a rational"""
        return cls.coerce(Fraction(value))

    @classmethod
    def sqrt(cls, value: Rational) -> 'ExactNumber':
        """square root of a rational, i*sqrt(|q|) for negative q"""
        value = Fraction(value)
        if value == 0:
            return cls.coerce(0)
        num, den = abs(value.numerator), value.denominator
        # sqrt(n/m) = sqrt(n*m)/m
        if value > 0:
            return cls(x=Fraction(1, den), radicand=num * den)
        return cls(z=Fraction(1, den), radicand=num * den)

    @staticmethod
    def _common(a: 'ExactNumber', b: 'ExactNumber') -> int:
        if a.radicand == 1:
            return b.radicand
        if b.radicand in (1, a.radicand):
            return a.radicand
        raise DiscriminantMismatchError(
            f"cannot mix Q(sqrt({a.radicand})) and Q(sqrt({b.radicand}))")

    @staticmethod
    def _other(value):
        if isinstance(value, ExactNumber):
            return value
        if isinstance(value, (int, Fraction)):
            return ExactNumber.coerce(value)
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        s = self._common(self, other)
        return ExactNumber._make(self.w + other.w, self.x + other.x,
                                 self.y + other.y, self.z + other.z, s)

    __radd__ = __add__

    def __neg__(self):
        return ExactNumber._make(-self.w, -self.x, -self.y, -self.z, self.radicand)

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        s = self._common(self, other)
        w1, x1, y1, z1 = self.w, self.x, self.y, self.z
        w2, x2, y2, z2 = other.w, other.x, other.y, other.z
        return ExactNumber._make(
            w1 * w2 - y1 * y2 + s * (x1 * x2 - z1 * z2),
            w1 * x2 + x1 * w2 - (y1 * z2 + z1 * y2),
            w1 * y2 + y1 * w2 + s * (x1 * z2 + z1 * x2),
            w1 * z2 + z1 * w2 + y1 * x2 + x1 * y2,
            s,
        )

    __rmul__ = __mul__

    def inverse(self) -> 'ExactNumber':
        """multiplicative inverse"""
        if self.is_zero():
            raise ZeroDivisionError("inverse of exact zero")
        norm = self * self.conjugate()  # real element p + q*sqrt(s)
        denominator = norm.w ** 2 - norm.radicand * norm.x ** 2
        return self.conjugate() * norm.galois() * Fraction(1) / denominator

    def __truediv__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        if other.is_rational():
            if other.w == 0:
                raise ZeroDivisionError("division by exact zero")
            q = other.w
            return ExactNumber._make(self.w / q, self.x / q, self.y / q, self.z / q,
                                     self.radicand)
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = ExactNumber.coerce(1)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def conjugate(self) -> 'ExactNumber':
        """complex conjugation"""
        return ExactNumber._make(self.w, self.x, -self.y, -self.z, self.radicand)

    def galois(self) -> 'ExactNumber':
        """sqrt(s) -> -sqrt(s)"""
        return ExactNumber._make(self.w, -self.x, self.y, -self.z, self.radicand)

    @property
    def real(self) -> 'ExactNumber':
        return ExactNumber._make(self.w, self.x, Fraction(0), Fraction(0), self.radicand)

    @property
    def imag(self) -> 'ExactNumber':
        return ExactNumber._make(self.y, self.z, Fraction(0), Fraction(0), self.radicand)

    def is_zero(self) -> bool:
        return not (self.w or self.x or self.y or self.z)

    def is_rational(self) -> bool:
        return not (self.x or self.y or self.z)

    def is_imaginary_rational(self) -> bool:
        return not (self.w or self.x or self.z)

    def is_real(self) -> bool:
        return not (self.y or self.z)

    def as_fraction(self) -> Fraction:
        """the rational value, DataError otherwise"""
        if not self.is_rational():
            raise DataError(f"{self} is not rational")
        return self.w

    def to_mpc(self):
        """numeric embedding at the active mpmath precision"""
        root = mp.sqrt(self.radicand)
        return mp.mpc(_to_mpf(self.w) + _to_mpf(self.x) * root,
                      _to_mpf(self.y) + _to_mpf(self.z) * root)

    def __complex__(self):
        return complex(self.to_mpc())

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return (self.w, self.x, self.y, self.z) == (other.w, other.x, other.y, other.z) \
            and (self.radicand == other.radicand or not (self.x or self.z))

    def __hash__(self):
        return hash((self.w, self.x, self.y, self.z, self.radicand))

    def __str__(self):
        root = f"sqrt({self.radicand})"
        parts = [_fmt(c, unit) for c, unit in ((self.w, ''), (self.x, root),
                                               (self.y, 'i'), (self.z, f"i*{root}")) if c]
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"ExactNumber({self})"


I = ExactNumber(y=1)


def omega_value(k: int):
    """pi*zeta(2k-1)/zeta(2k)"""
    return mp.pi * mp.zeta(2 * k - 1) / mp.zeta(2 * k)


class OmegaNumber:
    """
    base + omega * pi*zeta(2k-1)/zeta(2k) with exact base and omega.
    Carrier of the outer Eisenstein periods and everything built on them.
    """

    __slots__ = ('base', 'omega', 'k')

    def __init__(self, base, omega, k: int):
        self.base = ExactNumber.coerce(base)
        self.omega = ExactNumber.coerce(omega)
        self.k = k

    def _other(self, other):
        if isinstance(other, OmegaNumber):
            if other.k != self.k:
                raise DataError(f"cannot mix zeta constants of weights {2 * self.k} "
                                f"and {2 * other.k}")
            return other
        if isinstance(other, (int, Fraction, ExactNumber)):
            return OmegaNumber(other, 0, self.k)
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return OmegaNumber(self.base + other.base, self.omega + other.omega, self.k)

    __radd__ = __add__

    def __neg__(self):
        return OmegaNumber(-self.base, -self.omega, self.k)

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if not isinstance(other, (int, Fraction, ExactNumber)):
            return NotImplemented
        return OmegaNumber(self.base * other, self.omega * other, self.k)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (int, Fraction, ExactNumber)):
            return NotImplemented
        return OmegaNumber(self.base / other, self.omega / other, self.k)

    def conjugate(self) -> 'OmegaNumber':
        return OmegaNumber(self.base.conjugate(), self.omega.conjugate(), self.k)

    def is_exact(self) -> bool:
        """no transcendental part"""
        return self.omega.is_zero()

    def to_mpc(self):
        return self.base.to_mpc() + self.omega.to_mpc() * omega_value(self.k)

    def __eq__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self.base == other.base and self.omega == other.omega

    def __hash__(self):
        return hash((self.base, self.omega, self.k))

    def __str__(self):
        if self.omega.is_zero():
            return str(self.base)
        omega = f"({self.omega})*pi*zeta({2 * self.k - 1})/zeta({2 * self.k})"
        return omega if self.base.is_zero() else f"{self.base} + {omega}"

    __repr__ = __str__


def exact_or_omega(value):
    """collapse an OmegaNumber without transcendental part"""
    if isinstance(value, OmegaNumber) and value.is_exact():
        return value.base
    return value


def to_mpc(value):
    """numeric embedding of any exact or numeric value"""
    if isinstance(value, (ExactNumber, OmegaNumber)):
        return value.to_mpc()
    if isinstance(value, Fraction):
        return mp.mpc(_to_mpf(value))
    return mp.mpc(value)


class GaussPoly:
    """
    Laurent polynomial in one variable with exact coefficients,
    stored sparse as {exponent: ExactNumber}.
    """

    __slots__ = ('_coeffs',)

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        elif not isinstance(coeffs, dict):
            coeffs = dict(enumerate(coeffs))
        self._coeffs: Dict[int, ExactNumber] = {}
        for exp, value in coeffs.items():
            value = ExactNumber.coerce(value)
            if not value.is_zero():
                self._coeffs[int(exp)] = value

    @classmethod
    def monomial(cls, exp: int, coeff=1) -> 'GaussPoly':
        return cls({exp: coeff})

    @classmethod
    def linear(cls, p: Rational, q: Rational) -> 'GaussPoly':
        """p*X + q"""
        return cls({1: p, 0: q})

    @property
    def degree(self) -> int:
        """highest exponent, -1 for the zero polynomial"""
        return max(self._coeffs, default=-1)

    @property
    def low_degree(self) -> int:
        return min(self._coeffs, default=0)

    def coeff(self, exp: int) -> ExactNumber:
        return self._coeffs.get(exp, ExactNumber.coerce(0))

    def items(self) -> Iterable[Tuple[int, ExactNumber]]:
        return sorted(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_polynomial(self) -> bool:
        return self.low_degree >= 0

    def _other(self, other):
        if isinstance(other, GaussPoly):
            return other
        if isinstance(other, (int, Fraction, ExactNumber)):
            return GaussPoly({0: other})
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        result = dict(self._coeffs)
        for exp, value in other._coeffs.items():
            result[exp] = result[exp] + value if exp in result else value
        return GaussPoly(result)

    __radd__ = __add__

    def __neg__(self):
        return GaussPoly({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ExactNumber)):
            return GaussPoly({e: c * other for e, c in self._coeffs.items()})
        if not isinstance(other, GaussPoly):
            return NotImplemented
        result: Dict[int, ExactNumber] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                term = c1 * c2
                result[e1 + e2] = result[e1 + e2] + term if e1 + e2 in result else term
        return GaussPoly(result)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (int, Fraction, ExactNumber)):
            return NotImplemented
        return GaussPoly({e: c / other for e, c in self._coeffs.items()})

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = GaussPoly({0: 1})
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self._coeffs == other._coeffs

    __hash__ = None

    def __call__(self, x):
        if isinstance(x, ExactPoint):
            x = x.tau
        if isinstance(x, (int, Fraction, ExactNumber)):
            x = ExactNumber.coerce(x)
            result = ExactNumber.coerce(0)
            for exp, value in self._coeffs.items():
                result = result + value * x ** exp
            return result
        x = mp.mpc(x)
        return mp.fsum(value.to_mpc() * x ** exp for exp, value in self.items())

    def conjugate(self) -> 'GaussPoly':
        """conjugate the coefficients"""
        return GaussPoly({e: c.conjugate() for e, c in self._coeffs.items()})

    def shift(self, t: Rational) -> 'GaussPoly':
        """p(X + t)"""
        if not self.is_polynomial():
            raise DataError("shift of a Laurent polynomial with negative exponents")
        result = GaussPoly()
        step = GaussPoly.linear(1, t)
        for exp, value in self._coeffs.items():
            result = result + step ** exp * value
        return result

    def odd_part(self) -> 'GaussPoly':
        return GaussPoly({e: c for e, c in self._coeffs.items() if e % 2})

    def even_part(self) -> 'GaussPoly':
        return GaussPoly({e: c for e, c in self._coeffs.items() if not e % 2})

    def slash(self, k: int, matrix) -> 'GaussPoly':
        """
        Weight 2-2k slash: sum c_j (a X + b)^j (c X + d)^(2k-2-j).
        Negative powers are only allowed for monomial linear factors.
        """
        a, b, c, d = matrix.a, matrix.b, matrix.c, matrix.d
        result = GaussPoly()
        for exp, value in self._coeffs.items():
            result = result + (_linear_power(a, b, exp)
                               * _linear_power(c, d, 2 * k - 2 - exp) * value)
        return result

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for exp, value in sorted(self._coeffs.items(), reverse=True):
            unit = "" if exp == 0 else ("X" if exp == 1 else f"X^{exp}")
            text = str(value)
            if value.is_rational() or not unit:
                parts.append(_fmt(value.w, unit) if value.is_rational() else text)
            else:
                parts.append(f"({text})*{unit}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"GaussPoly({self})"


def _linear_power(p: int, q: int, exp: int) -> GaussPoly:
    """(p X + q)**exp as a Laurent polynomial"""
    if exp >= 0:
        return GaussPoly({j: comb(exp, j) * Fraction(p) ** j * Fraction(q) ** (exp - j)
                          for j in range(exp + 1)})
    if q == 0:
        return GaussPoly.monomial(exp, Fraction(p) ** exp)
    if p == 0:
        return GaussPoly.monomial(0, Fraction(q) ** exp)
    raise DataError(f"slash result is not polynomial: ({p}X + {q})^{exp}")


def slash_poly(p: GaussPoly, k: int, matrix) -> GaussPoly:
    """weight 2-2k slash of a polynomial of degree <= 2k-2, exactly"""
    if p.degree > 2 * k - 2 or not p.is_polynomial():
        raise DataError(f"degree {p.degree} exceeds 2k-2 = {2 * k - 2}, "
                        f"slash is not a polynomial")
    return p.slash(k, matrix)


_BERNOULLI = [Fraction(1)]


def bernoulli_number(m: int) -> Fraction:
    """B_m with B_1 = -1/2"""
    if m < 0:
        raise DataError(f"Bernoulli index must be non-negative, got {m}")
    while len(_BERNOULLI) <= m:
        n = len(_BERNOULLI)
        _BERNOULLI.append(-sum(comb(n + 1, j) * _BERNOULLI[j] for j in range(n))
                          / Fraction(n + 1))
    return _BERNOULLI[m]


@lru_cache(maxsize=None)
def bernoulli_polynomial(m: int) -> GaussPoly:
    """B_m(X) = sum C(m, l) B_(m-l) X^l"""
    if m < 0:
        raise DataError(f"Bernoulli index must be non-negative, got {m}")
    return GaussPoly({ell: comb(m, ell) * bernoulli_number(m - ell) for ell in range(m + 1)})


def periodized_bernoulli(m: int, tau):
    """
    B_m(tau - floor(u)); on integer u the average of both one-sided limits.
    Exact for ExactPoint input, mpmath otherwise.
    """
    if m < 1:
        raise DataError(f"periodized Bernoulli needs m >= 1, got {m}")
    poly = bernoulli_polynomial(m)
    if isinstance(tau, ExactPoint):
        fl = floor(tau.u)
        value = tau.tau - fl
        if tau.u == fl:
            return (poly(value) + poly(value + 1)) / 2
        return poly(value)
    tau = mp.mpc(tau)
    fl = mp.floor(tau.real)
    value = tau - fl
    if tau.real == fl:
        return (poly(value) + poly(value + 1)) / 2
    return poly(value)


@dataclass(frozen=True)
class ExactPoint:
    """Point u + i*v of the upper half plane with u and v**2 rational"""
    u: Fraction
    v_squared: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'u', Fraction(self.u))
        object.__setattr__(self, 'v_squared', Fraction(self.v_squared))
        if self.v_squared <= 0:
            raise DataError(f"point must lie in the upper half plane, v^2 = {self.v_squared}")

    @property
    def v(self) -> ExactNumber:
        return ExactNumber.sqrt(self.v_squared)

    @property
    def tau(self) -> ExactNumber:
        return ExactNumber.rational(self.u) + I * self.v

    @property
    def abs_squared(self) -> Fraction:
        return self.u ** 2 + self.v_squared

    @property
    def radicand(self) -> int:
        """squarefree s with v in Q(sqrt(s))"""
        q = self.v_squared
        return squarefree_decomposition(q.numerator * q.denominator)[1]

    def translate(self, t: Rational) -> 'ExactPoint':
        return ExactPoint(self.u + t, self.v_squared)

    def apply(self, matrix) -> 'ExactPoint':
        """Moebius action of an integer matrix of determinant one"""
        a, b, c, d = matrix.a, matrix.b, matrix.c, matrix.d
        norm = c * c * self.abs_squared + 2 * c * d * self.u + d * d
        u = (a * c * self.abs_squared + (a * d + b * c) * self.u + b * d) / norm
        return ExactPoint(u, self.v_squared / norm ** 2)

    def to_mpc(self):
        return mp.mpc(_to_mpf(self.u), mp.sqrt(_to_mpf(self.v_squared)))

    def __str__(self):
        return f"{self.u} + i*sqrt({self.v_squared})"


class MixedExpr:
    """
    Finite sum of c * u**alpha * v**beta (alpha >= 0, beta integer),
    stored as {(alpha, beta): ExactNumber}.
    """

    __slots__ = ('terms',)

    def __init__(self, terms=None):
        self.terms: Dict[Tuple[int, int], ExactNumber] = {}
        for key, value in (terms or {}).items():
            value = ExactNumber.coerce(value)
            if not value.is_zero():
                self.terms[key] = value

    @classmethod
    def from_tau_power(cls, ell: int) -> 'MixedExpr':
        """(u + i v)**ell"""
        return cls({(ell - j, j): I ** j * comb(ell, j) for j in range(ell + 1)})

    @classmethod
    def from_poly(cls, poly: GaussPoly) -> 'MixedExpr':
        result = cls()
        for exp, value in poly.items():
            result = result + cls.from_tau_power(exp) * value
        return result

    def _combine(self, pairs) -> 'MixedExpr':
        result: Dict[Tuple[int, int], ExactNumber] = {}
        for key, value in pairs:
            result[key] = result[key] + value if key in result else value
        return MixedExpr(result)

    def __add__(self, other):
        if not isinstance(other, MixedExpr):
            return NotImplemented
        return self._combine(list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other):
        if not isinstance(other, MixedExpr):
            return NotImplemented
        return self + other * -1

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ExactNumber)):
            return MixedExpr({key: value * other for key, value in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, MixedExpr):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def d_du(self) -> 'MixedExpr':
        return self._combine(((a - 1, b), c * a) for (a, b), c in self.terms.items() if a)

    def d_dv(self) -> 'MixedExpr':
        return self._combine(((a, b - 1), c * b) for (a, b), c in self.terms.items() if b)

    def d_tau(self) -> 'MixedExpr':
        """(d/du - i d/dv)/2"""
        return (self.d_du() - self.d_dv() * I) * Fraction(1, 2)

    def mul_v(self, power: int) -> 'MixedExpr':
        return MixedExpr({(a, b + power): c for (a, b), c in self.terms.items()})

    def raise_(self, kappa: int) -> 'MixedExpr':
        """R_kappa = i d/du + d/dv + kappa/v"""
        return self.d_du() * I + self.d_dv() + self.mul_v(-1) * kappa

    def evaluate(self, point):
        """exact value at an ExactPoint, numeric at anything else"""
        if isinstance(point, ExactPoint):
            u, v = ExactNumber.rational(point.u), point.v
            result = ExactNumber.coerce(0)
            for (a, b), c in self.terms.items():
                result = result + c * u ** a * v ** b
            return result
        point = mp.mpc(point)
        u, v = point.real, point.imag
        return mp.fsum(c.to_mpc() * u ** a * v ** b for (a, b), c in sorted(self.terms.items()))

    def __repr__(self):
        return f"MixedExpr({ {k: str(v) for k, v in sorted(self.terms.items())} })"


class ExpFourierExpr:
    """
    Finite sum of c(pi) * v**j * exp(q*pi*v) * e(m*u), keyed (j, q, m),
    with c(pi) a GaussPoly in pi.  q is rational, j and m are integers.
    """

    __slots__ = ('terms',)

    def __init__(self, terms=None):
        self.terms: Dict[Tuple[int, Fraction, int], GaussPoly] = {}
        for (j, q, m), value in (terms or {}).items():
            if not isinstance(value, GaussPoly):
                value = GaussPoly({0: value})
            if not value.is_zero():
                self.terms[(j, Fraction(q), m)] = value

    @classmethod
    def e_tau(cls, n: int) -> 'ExpFourierExpr':
        """e(n tau) = exp(-2 pi n v) e(n u)"""
        return cls({(0, -2 * n, n): 1})

    @classmethod
    def gamma_mode(cls, k: int, n: int) -> 'ExpFourierExpr':
        """Gamma(2k-1, 4 pi n v) e(-n tau) via the finite incomplete Gamma sum"""
        scale = factorial(2 * k - 2)
        return cls({(j, -2 * n, -n): GaussPoly.monomial(j, Fraction(scale * (4 * n) ** j,
                                                                    factorial(j)))
                    for j in range(2 * k - 1)})

    def _combine(self, pairs) -> 'ExpFourierExpr':
        result: Dict[Tuple[int, Fraction, int], GaussPoly] = {}
        for key, value in pairs:
            result[key] = result[key] + value if key in result else value
        return ExpFourierExpr(result)

    def __add__(self, other):
        if not isinstance(other, ExpFourierExpr):
            return NotImplemented
        return self._combine(list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other):
        if not isinstance(other, ExpFourierExpr):
            return NotImplemented
        return self + other * -1

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ExactNumber, GaussPoly)):
            return ExpFourierExpr({key: value * other for key, value in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ExpFourierExpr):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def d_du(self) -> 'ExpFourierExpr':
        """d e(m u)/du = 2 pi i m e(m u)"""
        return self._combine((key, c * GaussPoly.monomial(1, I * 2 * key[2]))
                             for key, c in self.terms.items() if key[2])

    def d_dv(self) -> 'ExpFourierExpr':
        pairs = []
        for (j, q, m), c in self.terms.items():
            if j:
                pairs.append(((j - 1, q, m), c * j))
            if q:
                pairs.append(((j, q, m), c * GaussPoly.monomial(1, q)))
        return self._combine(pairs)

    def d_tau(self) -> 'ExpFourierExpr':
        return (self.d_du() - self.d_dv() * I) * Fraction(1, 2)

    def mul_v(self, power: int) -> 'ExpFourierExpr':
        return ExpFourierExpr({(j + power, q, m): c for (j, q, m), c in self.terms.items()})

    def raise_(self, kappa: int) -> 'ExpFourierExpr':
        """R_kappa = i d/du + d/dv + kappa/v, termwise"""
        pairs = []
        for (j, q, m), c in self.terms.items():
            pairs.append(((j, q, m), c * GaussPoly.monomial(1, q - 2 * m)))
            pairs.append(((j - 1, q, m), c * (j + kappa)))
        return self._combine(pairs)

    def conj(self) -> 'ExpFourierExpr':
        """complex conjugate function"""
        return ExpFourierExpr({(j, q, -m): c.conjugate() for (j, q, m), c in self.terms.items()})

    def evaluate(self, tau):
        tau = mp.mpc(tau)
        u, v = tau.real, tau.imag
        return mp.fsum(c(mp.pi) * v ** j * mp.exp(_to_mpf(q) * mp.pi * v) * mp.expjpi(2 * m * u)
                       for (j, q, m), c in sorted(self.terms.items()))

    def __repr__(self):
        return f"ExpFourierExpr({ {k: str(v) for k, v in sorted(self.terms.items())} })"


def raise_iterated_symbolic(expr, start_weight: int, steps: int):
    """apply R_kappa, R_(kappa+2), ... termwise, steps times"""
    if steps < 0:
        raise DataError(f"number of raising steps must be non-negative, got {steps}")
    kappa = start_weight
    for _ in range(steps):
        expr = expr.raise_(kappa)
        kappa += 2
    return expr


def raise_closed_sum(expr, k: int):
    """
    R^(k-1)_(2-2k) f = (-v)^(1-k) (k-1)! sum_j (-2iv)^j/j! C(2k-2-j, k-1) d^j f/dtau^j
    on either symbolic algebra
    """
    result = None
    derivative = expr
    for j in range(k):
        factor = (ExactNumber(y=-2) ** j * Fraction(factorial(k - 1) * comb(2 * k - 2 - j, k - 1),
                                                     factorial(j)) * (-1) ** (k - 1))
        term = derivative.mul_v(j + 1 - k) * factor
        result = term if result is None else result + term
        derivative = derivative.d_tau()
    return result


def raise_monomial_closed_form(k: int, ell: int, point: ExactPoint) -> ExactNumber:
    """R^(k-1)_(2-2k) tau**ell at an exact point, real part plus the v**k correction"""
    if k < 1:
        raise DataError(f"weight parameter k must be positive, got {k}")
    if not 0 <= ell <= 2 * k - 1:
        raise DataError(f"exponent must lie in 0..{2 * k - 1}, got {ell}")
    u, v = ExactNumber.rational(point.u), point.v
    iv = I * v
    total = ExactNumber.coerce(0)
    for j in range(min(k - 1, ell) + 1):
        inner = ExactNumber.coerce(0)
        for alpha in range(ell - j + 1):
            if (ell - alpha) % 2 == 0:
                inner = inner + u ** alpha * iv ** (ell - alpha) * comb(ell - j, alpha)
        total = total + inner * (comb(ell, j) * Fraction(factorial(2 * k - 2 - j),
                                                         factorial(k - 1 - j)) * (-2) ** j)
    total = total * (-v) ** (1 - k)
    if ell == 2 * k - 1:
        total = total + I * v ** k * ((-1) ** (k - 1) * 2 ** (2 * k - 2) * factorial(k - 1))
    return total


def raise_polynomial(poly: GaussPoly, k: int, point: ExactPoint) -> ExactNumber:
    """R^(k-1)_(2-2k) of a polynomial of degree <= 2k-1 at an exact point"""
    result = ExactNumber.coerce(0)
    for exp, value in poly.items():
        result = result + value * raise_monomial_closed_form(k, exp, point)
    return result


__all__ = (
    'ExactNumber',
    'OmegaNumber',
    'GaussPoly',
    'ExactPoint',
    'MixedExpr',
    'ExpFourierExpr',
    'I',
    'squarefree_decomposition',
    'omega_value',
    'exact_or_omega',
    'to_mpc',
    'slash_poly',
    'bernoulli_number',
    'bernoulli_polynomial',
    'periodized_bernoulli',
    'raise_iterated_symbolic',
    'raise_closed_sum',
    'raise_monomial_closed_form',
    'raise_polynomial',
)
