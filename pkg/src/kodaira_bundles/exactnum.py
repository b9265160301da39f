"""Exact arithmetic in Q and in imaginary quadratic fields Q(sqrt(-D)).

Rationals are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator).  :class:`QuadInt` is an element ``a + b*sqrt(-D)``
with rational ``a``, ``b``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

Rational = Fraction

__all__ = [
    "Rational",
    "QuadInt",
    "FieldMismatch",
    "as_rational",
    "is_squarefree",
    "norm",
    "conjugate",
]

Scalar = Union[int, Fraction]


class FieldMismatch(ValueError):
    """Raised when values from Q(sqrt(-D)) and Q(sqrt(-D')) are combined."""


def as_rational(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


class QuadInt:
    """An element ``a + b*sqrt(-D)`` of K = Q(sqrt(-D)), D > 0 squarefree."""

    __slots__ = ("_a", "_b", "_D")

    def __init__(self, a: Scalar, b: Scalar = 0, D: int = 1) -> None:
        if not isinstance(D, int) or not is_squarefree(D):
            raise ValueError(f"D must be a positive squarefree integer, got {D!r}")
        self._a = as_rational(a)
        self._b = as_rational(b)
        self._D = D

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @property
    def D(self) -> int:
        return self._D

    @classmethod
    def sqrt_minus_d(cls, D: int) -> QuadInt:
        return cls(0, 1, D)

    def coords(self) -> tuple[Fraction, Fraction]:
        return (self._a, self._b)

    def _coerce(self, other: object) -> QuadInt | None:
        if isinstance(other, QuadInt):
            if other._D != self._D:
                raise FieldMismatch(f"cannot mix D={self._D} and D={other._D}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadInt(other, 0, self._D)
        return None

    def __repr__(self) -> str:
        return f"QuadInt({self._a}, {self._b}, D={self._D})"

    def __str__(self) -> str:
        if self._b == 0:
            return str(self._a)
        root = f"sqrt(-{self._D})"
        if self._a == 0:
            return f"{self._b}*{root}"
        sign = "+" if self._b > 0 else "-"
        return f"{self._a}{sign}{abs(self._b)}*{root}"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadInt):
            return (self._a, self._b, self._D) == (other._a, other._b, other._D)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._b == 0 and self._a == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b, self._D))

    def __bool__(self) -> bool:
        return bool(self._a) or bool(self._b)

    def __neg__(self) -> QuadInt:
        return QuadInt(-self._a, -self._b, self._D)

    def __pos__(self) -> QuadInt:
        return self

    def __add__(self, other: object) -> QuadInt:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadInt(self._a + o._a, self._b + o._b, self._D)

    __radd__ = __add__

    def __sub__(self, other: object) -> QuadInt:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadInt(self._a - o._a, self._b - o._b, self._D)

    def __rsub__(self, other: object) -> QuadInt:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: object) -> QuadInt:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        D = self._D
        return QuadInt(
            self._a * o._a - D * self._b * o._b,
            self._a * o._b + self._b * o._a,
            D,
        )

    __rmul__ = __mul__

    def inverse(self) -> QuadInt:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt(-D))")
        return QuadInt(self._a / n, -self._b / n, self._D)

    def __truediv__(self, other: object) -> QuadInt:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> QuadInt:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int) -> QuadInt:
        if e < 0:
            return self.inverse() ** (-e)
        result = QuadInt(1, 0, self._D)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def norm(self) -> Fraction:
        return self._a * self._a + self._D * self._b * self._b

    def trace(self) -> Fraction:
        return 2 * self._a

    def conjugate(self) -> QuadInt:
        return QuadInt(self._a, -self._b, self._D)

    def is_rational(self) -> bool:
        return self._b == 0


def norm(x: QuadInt) -> Fraction:
    """Field norm ``a^2 + D*b^2``."""
    return x.norm()


def conjugate(x: QuadInt) -> QuadInt:
    return x.conjugate()
