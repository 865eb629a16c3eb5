"""Coefficient rings and the special functions used by the expectation checks.

Two scalar types are provided. ``ExactScalar`` is an element of Q(i, sqrt2)
stored as four integer numerators over one positive denominator, which keeps
the inner loops of the star product on plain integer arithmetic.
``FloatScalar`` wraps a finite complex double.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from numbers import Rational
from typing import Any, Callable, TypeVar, Union

__all__ = [
    "ExactScalar",
    "FloatScalar",
    "Coefficient",
    "coerce",
    "to_exact",
    "ZERO",
    "ONE",
    "I",
    "SQRT2",
    "factorial",
    "bessel_i",
    "incomplete_gamma_poly",
    "BESSEL_ARG_LIMIT",
]

_SQRT2_FLOAT = math.sqrt(2.0)
BESSEL_ARG_LIMIT = 30.0


def _gcd5(a: int, b: int, c: int, d: int, e: int) -> int:
    return math.gcd(math.gcd(math.gcd(a, b), math.gcd(c, d)), e)


class ExactScalar:
    """(re_rat + re_root2*sqrt2) + i*(im_rat + im_root2*sqrt2), all rational."""

    __slots__ = ("_a", "_b", "_c", "_d", "_den")

    def __init__(
        self,
        re_rat: Rational | int = 0,
        re_root2: Rational | int = 0,
        im_rat: Rational | int = 0,
        im_root2: Rational | int = 0,
    ) -> None:
        parts = [Fraction(v) for v in (re_rat, re_root2, im_rat, im_root2)]
        den = 1
        for q in parts:
            den = den * q.denominator // math.gcd(den, q.denominator)
        a, b, c, d = (q.numerator * (den // q.denominator) for q in parts)
        self._set(a, b, c, d, den)

    def _set(self, a: int, b: int, c: int, d: int, den: int) -> None:
        if den < 0:
            a, b, c, d, den = -a, -b, -c, -d, -den
        g = _gcd5(a, b, c, d, den)
        if g > 1:
            a, b, c, d, den = a // g, b // g, c // g, d // g, den // g
        self._a, self._b, self._c, self._d, self._den = a, b, c, d, den

    @classmethod
    def _raw(cls, a: int, b: int, c: int, d: int, den: int) -> "ExactScalar":
        obj = cls.__new__(cls)
        obj._set(a, b, c, d, den)
        return obj

    # -- components -------------------------------------------------------
    @property
    def re_rat(self) -> Fraction:
        return Fraction(self._a, self._den)

    @property
    def re_root2(self) -> Fraction:
        return Fraction(self._b, self._den)

    @property
    def im_rat(self) -> Fraction:
        return Fraction(self._c, self._den)

    @property
    def im_root2(self) -> Fraction:
        return Fraction(self._d, self._den)

    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.re_rat, self.re_root2, self.im_rat, self.im_root2)

    def is_zero(self) -> bool:
        return not (self._a or self._b or self._c or self._d)

    def is_rational(self) -> bool:
        return not (self._b or self._c or self._d)

    def is_real(self) -> bool:
        return not (self._c or self._d)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def conjugate(self) -> "ExactScalar":
        return ExactScalar._raw(self._a, self._b, -self._c, -self._d, self._den)

    def to_complex(self) -> complex:
        den = self._den
        re = (self._a + self._b * _SQRT2_FLOAT) / den
        im = (self._c + self._d * _SQRT2_FLOAT) / den
        return complex(re, im)

    def __complex__(self) -> complex:
        return self.to_complex()

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._a, self._den)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: Any) -> Any:
        if not isinstance(other, ExactScalar):
            other = _promote(other)
            if other is NotImplemented or isinstance(other, FloatScalar):
                return other if other is NotImplemented else FloatScalar(self.to_complex()) + other
        d1, d2 = self._den, other._den
        if d1 == d2:
            return ExactScalar._raw(
                self._a + other._a, self._b + other._b, self._c + other._c, self._d + other._d, d1
            )
        return ExactScalar._raw(
            self._a * d2 + other._a * d1,
            self._b * d2 + other._b * d1,
            self._c * d2 + other._c * d1,
            self._d * d2 + other._d * d1,
            d1 * d2,
        )

    __radd__ = __add__

    def __neg__(self) -> "ExactScalar":
        return ExactScalar._raw(-self._a, -self._b, -self._c, -self._d, self._den)

    def __pos__(self) -> "ExactScalar":
        return self

    def __sub__(self, other: Any) -> Any:
        return self + (-other)

    def __rsub__(self, other: Any) -> Any:
        return (-self) + other

    def __mul__(self, other: Any) -> Any:
        if not isinstance(other, ExactScalar):
            other = _promote(other)
            if other is NotImplemented or isinstance(other, FloatScalar):
                return other if other is NotImplemented else FloatScalar(self.to_complex()) * other
        a, b, c, d = self._a, self._b, self._c, self._d
        e, f, g, h = other._a, other._b, other._c, other._d
        den = self._den * other._den
        if not (b or c or d):
            return ExactScalar._raw(a * e, a * f, a * g, a * h, den)
        if not (f or g or h):
            return ExactScalar._raw(a * e, b * e, c * e, d * e, den)
        return ExactScalar._raw(
            a * e + 2 * b * f - c * g - 2 * d * h,
            a * f + b * e - c * h - d * g,
            a * g + 2 * b * h + c * e + 2 * d * f,
            a * h + b * g + c * f + d * e,
            den,
        )

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of exact zero")
        # |x|^2 = alpha + beta*sqrt2 with alpha, beta rational
        a, b, c, d, den = self._a, self._b, self._c, self._d, self._den
        alpha = a * a + 2 * b * b + c * c + 2 * d * d
        beta = 2 * (a * b + c * d)
        norm = alpha * alpha - 2 * beta * beta  # over den**4
        # 1/x = conj(x) * (alpha - beta*sqrt2) / norm, carrying den factors
        conj = ExactScalar._raw(a, b, -c, -d, 1)
        factor = ExactScalar._raw(alpha, -beta, 0, 0, 1)
        out = conj * factor
        return ExactScalar._raw(out._a * den, out._b * den, out._c * den, out._d * den, norm * out._den)

    def __truediv__(self, other: Any) -> Any:
        if isinstance(other, ExactScalar):
            return self * other.inverse()
        promoted = _promote(other)
        if promoted is NotImplemented:
            return NotImplemented
        if isinstance(promoted, FloatScalar):
            return FloatScalar(self.to_complex()) / promoted
        return self * promoted.inverse()

    def __rtruediv__(self, other: Any) -> Any:
        promoted = _promote(other)
        if promoted is NotImplemented:
            return NotImplemented
        return promoted / self

    def __pow__(self, n: int) -> "ExactScalar":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison -------------------------------------------------------
    def __eq__(self, other: Any) -> bool:
        if isinstance(other, ExactScalar):
            return (
                self._den == other._den
                and self._a == other._a
                and self._b == other._b
                and self._c == other._c
                and self._d == other._d
            )
        if isinstance(other, (int, Fraction)):
            return self == ExactScalar(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._a, self._b, self._c, self._d, self._den))

    def __repr__(self) -> str:
        return f"ExactScalar({self})"

    def __str__(self) -> str:
        pieces = []
        for value, suffix in (
            (self.re_rat, ""),
            (self.re_root2, "*sqrt2"),
            (self.im_rat, "*i"),
            (self.im_root2, "*sqrt2*i"),
        ):
            if value:
                pieces.append(f"{value}{suffix}")
        return " + ".join(pieces) if pieces else "0"


class FloatScalar:
    """Finite complex double."""

    __slots__ = ("value",)

    def __init__(self, re: float | complex = 0.0, im: float = 0.0) -> None:
        value = complex(re) + 1j * im if im else complex(re)
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise ValueError(f"non-finite coefficient {value!r}")
        self.value = value

    @property
    def re(self) -> float:
        return self.value.real

    @property
    def im(self) -> float:
        return self.value.imag

    def is_zero(self) -> bool:
        return self.value == 0

    def is_real(self) -> bool:
        return self.value.imag == 0

    def __bool__(self) -> bool:
        return self.value != 0

    def conjugate(self) -> "FloatScalar":
        return FloatScalar(self.value.conjugate())

    def to_complex(self) -> complex:
        return self.value

    def __complex__(self) -> complex:
        return self.value

    def _other(self, other: Any) -> complex | None:
        if isinstance(other, FloatScalar):
            return other.value
        if isinstance(other, ExactScalar):
            return other.to_complex()
        if isinstance(other, (int, float, complex, Fraction)):
            return complex(other)
        return None

    def __add__(self, other: Any) -> Any:
        o = self._other(other)
        return NotImplemented if o is None else FloatScalar(self.value + o)

    __radd__ = __add__

    def __sub__(self, other: Any) -> Any:
        o = self._other(other)
        return NotImplemented if o is None else FloatScalar(self.value - o)

    def __rsub__(self, other: Any) -> Any:
        o = self._other(other)
        return NotImplemented if o is None else FloatScalar(o - self.value)

    def __neg__(self) -> "FloatScalar":
        return FloatScalar(-self.value)

    def __mul__(self, other: Any) -> Any:
        o = self._other(other)
        return NotImplemented if o is None else FloatScalar(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> Any:
        o = self._other(other)
        return NotImplemented if o is None else FloatScalar(self.value / o)

    def __rtruediv__(self, other: Any) -> Any:
        o = self._other(other)
        return NotImplemented if o is None else FloatScalar(o / self.value)

    def __pow__(self, n: int) -> "FloatScalar":
        return FloatScalar(self.value**n)

    def __eq__(self, other: Any) -> bool:
        o = self._other(other)
        return NotImplemented if o is None else self.value == o

    def __hash__(self) -> int:
        return hash(self.value)

    def __repr__(self) -> str:
        return f"FloatScalar({self.value!r})"


Coefficient = Union[ExactScalar, FloatScalar]


def _promote(value: Any) -> Any:
    if isinstance(value, (ExactScalar, FloatScalar)):
        return value
    if isinstance(value, bool):
        return ExactScalar(int(value))
    if isinstance(value, (int, Fraction)):
        return ExactScalar(value)
    if isinstance(value, (float, complex)):
        return FloatScalar(value)
    return NotImplemented


def coerce(value: Any) -> Coefficient:
    """Lift ints, Fractions, floats and complexes into a coefficient ring."""
    promoted = _promote(value)
    if promoted is NotImplemented:
        raise TypeError(f"cannot use {type(value).__name__} as a coefficient")
    return promoted


def to_exact(value: Any) -> ExactScalar:
    promoted = coerce(value)
    if not isinstance(promoted, ExactScalar):
        raise TypeError("floating value where an exact coefficient is required")
    return promoted


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
I = ExactScalar(0, 0, 1)
SQRT2 = ExactScalar(0, 1)


def factorial(n: int) -> int:
    """n! as an exact integer."""
    if n < 0:
        raise ValueError("factorial of a negative integer")
    return math.factorial(n)


def bessel_i(order: int, arg: float) -> float:
    """Modified Bessel I_order(arg) from the ascending series.

    Negative integer orders are folded with I_{-n} = I_n.
    """
    if abs(arg) > BESSEL_ARG_LIMIT:
        raise ValueError(f"|arg| = {abs(arg)} outside the series regime (limit {BESSEL_ARG_LIMIT})")
    n = abs(int(order))
    if arg == 0:
        return 1.0 if n == 0 else 0.0
    half = abs(arg) / 2.0
    term = half**n / math.factorial(n)
    q = half * half
    terms = [term]
    k = 0
    while True:
        k += 1
        term *= q / (k * (k + n))
        terms.append(term)
        if term == 0.0 or (k > half and term < 1e-18 * terms[0] + 1e-17 * math.fsum(terms)):
            break
    value = math.fsum(terms)
    return -value if (arg < 0 and n % 2) else value


T = TypeVar("T")


def incomplete_gamma_poly(p: int, z: T) -> T:
    """p! * sum_{k<=p} z^k / k!, i.e. exp(+z) Gamma(p+1, z) as a polynomial in z.

    ``z`` can be anything closed under +, * and scalar multiplication, such as
    a CircleFunction.
    """
    if p < 0:
        raise ValueError("p must be nonnegative")
    acc = z * 0 + 1
    for k in range(p, 0, -1):
        acc = acc * z * Fraction(1, k) + 1
    return acc * factorial(p)
