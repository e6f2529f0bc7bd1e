"""
Exact arithmetic in the real quadratic field Q(sqrt2).

Every coordinate, matrix entry and area handled by the engine is a
``QSqrt2``. Components are ``fractions.Fraction`` instances, which keeps the
representation canonical: two values are equal exactly when their rational
parts and their sqrt2 parts are equal.
"""

from __future__ import annotations

import math
import operator
import warnings
from enum import Enum
from fractions import Fraction
from functools import total_ordering
from typing import Union

Rational = Union[int, Fraction]

_SQRT2_FLOAT = math.sqrt(2.0)


class ExactDivisionError(ZeroDivisionError):
    """Raised when a QSqrt2 value is divided by zero."""


class ArithOp(Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"


def _as_fraction(value: Rational | str) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"Expected an exact rational, got {type(value).__name__}")


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


@total_ordering
class QSqrt2:
    """
    The number ``a + b*sqrt2`` with rational ``a`` and ``b``.

    Instances are immutable and hashable; arithmetic with ``int`` and
    ``Fraction`` operands is supported on both sides.
    """

    __slots__ = ("_a", "_b")

    def __init__(self, a: Rational | str = 0, b: Rational | str = 0) -> None:
        self._a = _as_fraction(a)
        self._b = _as_fraction(b)

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @classmethod
    def coerce(cls, value: QSqrt2 | Rational) -> QSqrt2:
        if isinstance(value, QSqrt2):
            return value
        return cls(value, 0)

    # Field operations

    def __add__(self, other: QSqrt2 | Rational) -> QSqrt2:
        if isinstance(other, QSqrt2):
            return QSqrt2(self._a + other._a, self._b + other._b)
        if isinstance(other, (int, Fraction)):
            return QSqrt2(self._a + other, self._b)
        return NotImplemented

    def __radd__(self, other: Rational) -> QSqrt2:
        return self + other

    def __neg__(self) -> QSqrt2:
        return QSqrt2(-self._a, -self._b)

    def __pos__(self) -> QSqrt2:
        return self

    def __sub__(self, other: QSqrt2 | Rational) -> QSqrt2:
        if isinstance(other, QSqrt2):
            return QSqrt2(self._a - other._a, self._b - other._b)
        if isinstance(other, (int, Fraction)):
            return QSqrt2(self._a - other, self._b)
        return NotImplemented

    def __rsub__(self, other: Rational) -> QSqrt2:
        return (-self) + other

    def __mul__(self, other: QSqrt2 | Rational) -> QSqrt2:
        if isinstance(other, QSqrt2):
            a, b, c, d = self._a, self._b, other._a, other._b
            return QSqrt2(a * c + 2 * b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return QSqrt2(self._a * other, self._b * other)
        return NotImplemented

    def __rmul__(self, other: Rational) -> QSqrt2:
        return self * other

    def __truediv__(self, other: QSqrt2 | Rational) -> QSqrt2:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ExactDivisionError("division of a QSqrt2 value by zero")
            return QSqrt2(self._a / other, self._b / other)
        if isinstance(other, QSqrt2):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other: Rational) -> QSqrt2:
        return QSqrt2(other) * self.inverse()

    def __pow__(self, exponent: int) -> QSqrt2:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** -exponent
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> QSqrt2:
        """The Galois conjugate ``a - b*sqrt2``."""
        return QSqrt2(self._a, -self._b)

    def norm(self) -> Fraction:
        """The field norm ``a^2 - 2 b^2``; zero only for zero."""
        return self._a * self._a - 2 * self._b * self._b

    def inverse(self) -> QSqrt2:
        norm = self.norm()
        if norm == 0:
            raise ExactDivisionError("division of a QSqrt2 value by zero")
        return QSqrt2(self._a / norm, -self._b / norm)

    def arith(self, other: QSqrt2 | Rational, op: ArithOp) -> QSqrt2:
        return _ARITH[op](self, other)

    # Order

    def sign(self) -> int:
        """
        Exact sign of ``a + b*sqrt2`` using rational arithmetic only.

        When ``a`` and ``b`` have opposite signs the magnitudes are compared
        through ``a^2`` against ``2 b^2``.
        """
        sa = _sign(self._a)
        sb = _sign(self._b)
        if sa >= 0 and sb >= 0:
            return 1 if (sa or sb) else 0
        if sa <= 0 and sb <= 0:
            return -1
        a_sq = self._a * self._a
        two_b_sq = 2 * self._b * self._b
        if sa > 0:
            return 1 if a_sq > two_b_sq else -1
        return 1 if two_b_sq > a_sq else -1

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def __abs__(self) -> QSqrt2:
        return -self if self.sign() < 0 else self

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QSqrt2):
            return self._a == other._a and self._b == other._b
        if isinstance(other, (int, Fraction)):
            return self._b == 0 and self._a == other
        return NotImplemented

    def __lt__(self, other: QSqrt2 | Rational) -> bool:
        if isinstance(other, (QSqrt2, int, Fraction)):
            return (self - other).sign() < 0
        return NotImplemented

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b))

    def __bool__(self) -> bool:
        return not self.is_zero()

    # Conversions

    def to_float(self) -> float:
        """
        Nearest-double rendering value. Never used by any predicate.

        Values too large for a double saturate to an infinity with a
        ``RuntimeWarning``.
        """
        try:
            if self._b == 0:
                return float(self._a)
            # a + b*sqrt2 = (a^2 - 2b^2) / (a - b*sqrt2) avoids cancellation
            if _sign(self._a) * _sign(self._b) < 0:
                denominator = float(self._a) - float(self._b) * _SQRT2_FLOAT
                return float(self.norm()) / denominator
            return float(self._a) + float(self._b) * _SQRT2_FLOAT
        except OverflowError:
            warnings.warn(
                f"QSqrt2 value {self} overflows a double; saturating",
                RuntimeWarning,
                stacklevel=2,
            )
            return math.copysign(math.inf, self.sign())

    def __float__(self) -> float:
        return self.to_float()

    def to_json(self) -> dict[str, str]:
        return {"a": _fraction_text(self._a), "b": _fraction_text(self._b)}

    @classmethod
    def from_json(cls, payload: dict[str, str]) -> QSqrt2:
        return cls(_parse_fraction(payload["a"]), _parse_fraction(payload["b"]))

    def __repr__(self) -> str:
        return f"QSqrt2({self._a!s}, {self._b!s})"

    def __str__(self) -> str:
        if self._b == 0:
            return f"{self._a}"
        if self._a == 0:
            return f"{self._b}√2"
        sign = "+" if self._b > 0 else "-"
        return f"{self._a}{sign}{abs(self._b)}√2"


def _fraction_text(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _parse_fraction(text: str) -> Fraction:
    numerator, _, denominator = text.partition("/")
    if not denominator:
        return Fraction(int(numerator))
    return Fraction(int(numerator), int(denominator))


_ARITH = {
    ArithOp.ADD: operator.add,
    ArithOp.SUB: operator.sub,
    ArithOp.MUL: operator.mul,
    ArithOp.DIV: operator.truediv,
}

ZERO = QSqrt2(0, 0)
ONE = QSqrt2(1, 0)
TWO = QSqrt2(2, 0)
SQRT2 = QSqrt2(0, 1)
HALF_SQRT2 = QSqrt2(0, Fraction(1, 2))


def qs2_arith(x: QSqrt2, y: QSqrt2, op: ArithOp) -> QSqrt2:
    return x.arith(y, op)


def qs2_sign(x: QSqrt2) -> int:
    return x.sign()


def qs2_to_float(x: QSqrt2) -> float:
    return x.to_float()
