"""Exact numbers of the form x + y*sqrt(k) with rational x, y and integer k >= 0.

A single radicand per value keeps every comparison decidable by rational
arithmetic.  Values with compatible radicands (equal k, or one side purely
rational) form a field; mixing distinct irrational radicands is rejected.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from .errors import DomainError

Rational = Union[int, Fraction]

# Square divisors are pulled out of the radicand by trial division.  Full
# reduction is only attempted for moderate radicands; huge ones (dyadic floats
# squared) get a cheaper pass, which never affects correctness of sign or
# equality within one field.
_FULL_REDUCTION_CUTOFF = 10**12
_TRIAL_LIMIT_FULL = 10**6
_TRIAL_LIMIT_CHEAP = 10**4


@lru_cache(maxsize=None)
def _split_square(k: int) -> tuple[int, int]:
    """Write k = s**2 * core with core square-reduced; returns (s, core)."""
    if k <= 1:
        return 1, k
    r = math.isqrt(k)
    if r * r == k:
        return r, 1
    s, core = 1, k
    limit = _TRIAL_LIMIT_FULL if k < _FULL_REDUCTION_CUTOFF else _TRIAL_LIMIT_CHEAP
    d = 2
    while d <= limit and d * d <= core:
        dd = d * d
        while core % dd == 0:
            core //= dd
            s *= d
        d += 1
    r = math.isqrt(core)
    if r * r == core:
        return s * r, 1
    return s, core


class QuadScalar:
    """Immutable exact value x + y*sqrt(k)."""

    __slots__ = ("x", "y", "k")

    def __init__(self, x: Rational = 0, y: Rational = 0, k: int = 0):
        x = Fraction(x)
        y = Fraction(y)
        k = int(k)
        if k < 0:
            raise DomainError("radicand must be nonnegative")
        if y != 0 and k > 1:
            s, core = _split_square(k)
            if core <= 1:
                x += y * s * core  # core is 0 or 1
                y = Fraction(0)
                k = 0
            else:
                y *= s
                k = core
        elif y != 0 and k in (0, 1):
            x += y * k
            y = Fraction(0)
            k = 0
        if y == 0:
            k = 0
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "k", k)

    def __setattr__(self, *args):
        raise AttributeError("QuadScalar is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def rational(value: Rational) -> "QuadScalar":
        return QuadScalar(Fraction(value))

    @staticmethod
    def sqrt_rational(value: Rational) -> "QuadScalar":
        """Exact square root of a nonnegative rational, radicand extended as needed."""
        v = Fraction(value)
        if v < 0:
            raise DomainError("square root of a negative rational")
        if v == 0:
            return QuadScalar(0)
        num, den = v.numerator, v.denominator
        return QuadScalar(0, Fraction(1, den), num * den)

    # -- predicates ----------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.y == 0

    def rational_value(self) -> Fraction:
        if self.y != 0:
            raise DomainError(f"{self} is not rational")
        return self.x

    def is_integer(self) -> bool:
        return self.y == 0 and self.x.denominator == 1

    # -- field arithmetic ----------------------------------------------

    def _common_radicand(self, other: "QuadScalar") -> int:
        if self.k == 0:
            return other.k
        if other.k == 0 or other.k == self.k:
            return self.k
        raise DomainError(
            f"incompatible radicands sqrt({self.k}) and sqrt({other.k})"
        )

    @staticmethod
    def _coerce(value) -> "QuadScalar":
        if isinstance(value, QuadScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return QuadScalar(value)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        k = self._common_radicand(other)
        return QuadScalar(self.x + other.x, self.y + other.y, k)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar(-self.x, -self.y, self.k)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        k = self._common_radicand(other)
        return QuadScalar(
            self.x * other.x + self.y * other.y * k,
            self.x * other.y + self.y * other.x,
            k,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadScalar":
        return QuadScalar(self.x, -self.y, self.k)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        k = self._common_radicand(other)
        norm = other.x * other.x - other.y * other.y * k
        if norm == 0:
            if other.x == 0 and other.y == 0:
                raise ZeroDivisionError("division by zero")
            # x^2 = k*y^2 with y != 0 forces k to be a rational square,
            # which normalization already folded; unreachable for valid values.
            raise ZeroDivisionError("division by zero")
        num = self * other.conjugate()
        return QuadScalar(num.x / norm, num.y / norm, k)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return QuadScalar(1) / self ** (-exponent)
        result = QuadScalar(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- exact comparisons ----------------------------------------------

    def sign(self) -> int:
        """Exact sign, decided by rational comparisons only."""
        if self.y == 0:
            return (self.x > 0) - (self.x < 0)
        if self.x == 0:
            return 1 if self.y > 0 else -1
        sx = 1 if self.x > 0 else -1
        sy = 1 if self.y > 0 else -1
        if sx == sy:
            return sx
        lhs = self.x * self.x
        rhs = self.y * self.y * self.k
        if lhs == rhs:
            return 0
        return sx if lhs > rhs else sy

    def __bool__(self):
        return self.x != 0 or self.y != 0

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.x == other.x and self.y == other.y and self.k == other.k

    def __hash__(self):
        if self.y == 0:
            return hash(self.x)
        return hash((self.x, self.y, self.k))

    def _cmp(self, other) -> int:
        other = self._coerce(other)
        if other is NotImplemented:
            raise TypeError("cannot compare QuadScalar with this type")
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def floor(self) -> int:
        """Exact floor, float estimate corrected by exact comparisons."""
        est = math.floor(self.to_float())
        while self._cmp(est) < 0:
            est -= 1
        while self._cmp(est + 1) >= 0:
            est += 1
        return est

    # -- numeric embedding ----------------------------------------------

    def to_float(self, precision: int = 53) -> float:
        """Numeric value, correct within 1 ulp at `precision` bits (>= 53)."""
        if precision < 53:
            raise DomainError("precision must be at least 53 bits")
        if self.y == 0:
            return float(self.x)
        shift = 2 * precision
        root = Fraction(math.isqrt(self.k << shift), 1 << precision)
        return float(self.x + self.y * root)

    def __float__(self):
        return self.to_float()

    # -- serialization ---------------------------------------------------

    def to_string(self) -> str:
        if self.y >= 0:
            return f"{self.x}+{self.y}*sqrt({self.k})"
        return f"{self.x}-{-self.y}*sqrt({self.k})"

    _PATTERN = re.compile(
        r"^\s*(?P<x>[+-]?\d+(?:/\d+)?)\s*"
        r"(?:(?P<sign>[+-])\s*(?P<y>\d+(?:/\d+)?)\s*\*\s*sqrt\(\s*(?P<k>\d+)\s*\))?\s*$"
    )

    @staticmethod
    def from_string(text: str) -> "QuadScalar":
        match = QuadScalar._PATTERN.match(text)
        if not match:
            raise DomainError(f"cannot parse quadratic scalar from {text!r}")
        x = Fraction(match.group("x"))
        if match.group("y") is None:
            return QuadScalar(x)
        y = Fraction(match.group("y"))
        if match.group("sign") == "-":
            y = -y
        return QuadScalar(x, y, int(match.group("k")))

    def __repr__(self):
        return f"QuadScalar({self.to_string()})"

    def __str__(self):
        if self.y == 0:
            return str(self.x)
        return self.to_string()


QS_ZERO = QuadScalar(0)
QS_ONE = QuadScalar(1)


def sqrt_exact(value: QuadScalar) -> Optional[QuadScalar]:
    """Square root of `value` as a single QuadScalar, or None when impossible.

    Rational inputs always succeed (radicand extended if necessary); values
    with an irrational part succeed only when they are perfect squares inside
    their own field Q(sqrt(k)).
    """
    if value.sign() < 0:
        raise DomainError("square root of a negative value")
    if value.is_rational:
        return QuadScalar.sqrt_rational(value.x)
    # Solve (u + v*sqrt(k))^2 = x + y*sqrt(k) over the rationals.
    disc = value.x * value.x - value.y * value.y * value.k
    t = _rational_sqrt(disc)
    if t is None:
        return None
    for candidate in ((value.x + t) / 2, (value.x - t) / 2):
        u = _rational_sqrt(candidate)
        if u is not None and u != 0:
            v = value.y / (2 * u)
            root = QuadScalar(u, v, value.k)
            if root * root == value:
                return root if root.sign() >= 0 else -root
    return None


def compare_quad(a: QuadScalar, b: QuadScalar) -> int:
    """Exact three-way comparison that also works across distinct radicands.

    For incompatible radicands the difference (a.x - b.x + a.y*sqrt(a.k))
    - b.y*sqrt(b.k) is resolved by comparing signs and then squares, which
    stay inside single quadratic extensions.
    """
    if a.k == 0 or b.k == 0 or a.k == b.k:
        return (a - b).sign()
    left = QuadScalar(a.x - b.x, a.y, a.k)  # in Q(sqrt(a.k))
    s_left = left.sign()
    s_right = (b.y > 0) - (b.y < 0)  # sign of b.y*sqrt(b.k)
    if s_left <= 0 and s_right >= 0:
        return 0 if (s_left == 0 and s_right == 0) else -1
    if s_left >= 0 and s_right <= 0:
        return 0 if (s_left == 0 and s_right == 0) else 1
    squares = (left * left - b.y * b.y * b.k).sign()
    return squares if s_left > 0 else -squares


def _rational_sqrt(value: Fraction) -> Optional[Fraction]:
    if value < 0:
        return None
    num = math.isqrt(value.numerator)
    den = math.isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None
