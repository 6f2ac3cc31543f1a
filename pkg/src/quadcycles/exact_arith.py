"""Exact scalars: rationals and elements of quadratic fields Q(sqrt(D)).

Rationals are plain :class:`fractions.Fraction` values, which already keep
numerator and denominator coprime with a positive denominator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Union

from sympy import factorint

BigRational = Fraction
Scalar = Union[int, Fraction]

__all__ = [
    "BigRational",
    "Discriminant",
    "DomainError",
    "QuadraticElement",
    "conjugate",
    "format_rational",
    "minimal_polynomial",
    "parse_quadratic",
    "parse_rational",
    "quad_arith",
    "rational_sqrt",
    "squarefree_decompose",
]


class DomainError(ValueError):
    """Operation applied outside its mathematical domain."""


def format_rational(x: Scalar) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip().replace(" ", "")
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
        raise ValueError(f"not a rational number: {text!r}")
    return Fraction(text)


@lru_cache(maxsize=4096)
def squarefree_decompose(n: int) -> tuple[int, int]:
    """Split ``n`` as ``s * f**2`` with ``s`` squarefree and ``f > 0``.

    The sign of ``s`` follows the sign of ``n``.

    >>> squarefree_decompose(-18)
    (-2, 3)
    """
    if n == 0:
        raise DomainError("squarefree_decompose(0) is undefined")
    s, f = (1 if n > 0 else -1), 1
    for p, e in factorint(abs(n)).items():
        f *= p ** (e // 2)
        if e % 2:
            s *= p
    return s, f


def rational_sqrt(x: Scalar) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    x = Fraction(x)
    if x < 0:
        return None
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True, order=True)
class Discriminant:
    """Squarefree integer D different from 0 and 1, naming the field Q(sqrt(D))."""

    value: int

    def __post_init__(self):
        if self.value in (0, 1):
            raise DomainError(f"invalid discriminant {self.value}")
        s, f = squarefree_decompose(self.value)
        if f != 1:
            raise DomainError(f"discriminant {self.value} is not squarefree")

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class QuadraticElement:
    """The number ``rational_part + surd_part * sqrt(disc)``."""

    rational_part: Fraction
    surd_part: Fraction
    disc: Discriminant

    def __post_init__(self):
        object.__setattr__(self, "rational_part", Fraction(self.rational_part))
        object.__setattr__(self, "surd_part", Fraction(self.surd_part))
        if not isinstance(self.disc, Discriminant):
            object.__setattr__(self, "disc", Discriminant(int(self.disc)))

    @classmethod
    def of(cls, p: Scalar, q: Scalar, n: int) -> "QuadraticElement":
        """``p + q*sqrt(n)`` for any non-square integer ``n``; sqrt(12) becomes 2*sqrt(3)."""
        s, f = squarefree_decompose(n)
        if s == 1:
            raise DomainError(f"{n} is a perfect square; sqrt({n}) is rational")
        return cls(Fraction(p), Fraction(q) * f, Discriminant(s))

    @classmethod
    def rational(cls, p: Scalar, disc: Discriminant | int) -> "QuadraticElement":
        return cls(Fraction(p), Fraction(0), disc)

    @property
    def is_rational(self) -> bool:
        return self.surd_part == 0

    def trace(self) -> Fraction:
        return 2 * self.rational_part

    def norm(self) -> Fraction:
        return self.rational_part**2 - self.disc.value * self.surd_part**2

    def conjugate(self) -> "QuadraticElement":
        return QuadraticElement(self.rational_part, -self.surd_part, self.disc)

    def _coerce(self, other) -> "QuadraticElement":
        if isinstance(other, QuadraticElement):
            if other.disc != self.disc:
                raise DomainError(
                    f"mismatched discriminants {self.disc} and {other.disc}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticElement(Fraction(other), Fraction(0), self.disc)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticElement(
            self.rational_part + o.rational_part, self.surd_part + o.surd_part, self.disc
        )

    __radd__ = __add__

    def __neg__(self):
        return QuadraticElement(-self.rational_part, -self.surd_part, self.disc)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b, c, d = self.rational_part, self.surd_part, o.rational_part, o.surd_part
        return QuadraticElement(
            a * c + self.disc.value * b * d, a * d + b * c, self.disc
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticElement":
        n = self.norm()
        if n == 0:
            raise DomainError("division by zero in quadratic field")
        return QuadraticElement(self.rational_part / n, -self.surd_part / n, self.disc)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadraticElement(Fraction(1), Fraction(0), self.disc)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __complex__(self) -> complex:
        d = self.disc.value
        root = d**0.5 if d > 0 else 1j * (-d) ** 0.5
        return float(self.rational_part) + float(self.surd_part) * root

    def __str__(self) -> str:
        r = format_rational(self.rational_part)
        s = self.surd_part
        sign = "-" if s < 0 else "+"
        return f"{r} {sign} {format_rational(abs(s))}*sqrt({self.disc.value})"

    def __repr__(self) -> str:
        return f"QuadraticElement({self})"


def quad_arith(x: QuadraticElement, y: QuadraticElement, op: str) -> QuadraticElement:
    """Field operation ``op`` in {'add', 'sub', 'mul', 'div'} on same-field elements."""
    if x.disc != y.disc:
        raise DomainError(f"mismatched discriminants {x.disc} and {y.disc}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def conjugate(x: QuadraticElement) -> QuadraticElement:
    return x.conjugate()


def minimal_polynomial(x: QuadraticElement) -> list[Fraction]:
    """Monic minimal polynomial over Q, as coefficients from the constant term up."""
    if x.is_rational:
        return [-x.rational_part, Fraction(1)]
    return [x.norm(), -x.trace(), Fraction(1)]


_RAT = r"[+-]?\s*\d+(?:\s*/\s*\d+)?"
_QUAD_RE = re.compile(
    rf"^\s*(?P<r>{_RAT})\s*(?P<sign>[+-])\s*(?P<s>\d+(?:\s*/\s*\d+)?)\s*\*\s*sqrt\(\s*(?P<d>[+-]?\d+)\s*\)\s*$"
)


def parse_quadratic(text: str) -> QuadraticElement:
    """Parse ``"p/q + r/s*sqrt(D)"`` (or with ``-``); D is normalized to squarefree form."""
    m = _QUAD_RE.match(text)
    if not m:
        raise ValueError(f"not a quadratic element: {text!r}")
    r = parse_rational(m["r"])
    s = parse_rational(m["s"])
    if m["sign"] == "-":
        s = -s
    return QuadraticElement.of(r, s, int(m["d"]))
