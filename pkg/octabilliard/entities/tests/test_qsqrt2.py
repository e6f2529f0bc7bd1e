import math
import random
import unittest
import warnings
from fractions import Fraction

from ..qsqrt2 import (
    ONE,
    SQRT2,
    ZERO,
    ArithOp,
    ExactDivisionError,
    QSqrt2,
    qs2_arith,
    qs2_sign,
    qs2_to_float,
)


class TestQSqrt2Arithmetic(unittest.TestCase):
    """Field operations in Q(sqrt2)."""

    def test_sqrt2_squared_is_two(self):
        """sqrt2 * sqrt2 is exactly 2."""
        self.assertEqual(SQRT2 * SQRT2, QSqrt2(2))
        self.assertEqual(SQRT2 * SQRT2, 2)

    def test_inverse_of_one_plus_sqrt2(self):
        """1/(1+sqrt2) = sqrt2 - 1."""
        self.assertEqual(ONE / (ONE + SQRT2), QSqrt2(-1, 1))

    def test_mixed_operands(self):
        """ints and Fractions combine on both sides."""
        x = QSqrt2(Fraction(1, 2), 3)
        self.assertEqual(1 + x, QSqrt2(Fraction(3, 2), 3))
        self.assertEqual(x * 2, QSqrt2(1, 6))
        self.assertEqual(2 - x, QSqrt2(Fraction(3, 2), -3))
        self.assertEqual(1 / SQRT2, QSqrt2(0, Fraction(1, 2)))

    def test_arith_dispatch(self):
        """qs2_arith routes each ArithOp to the matching operation."""
        x, y = QSqrt2(1, 1), QSqrt2(2, -1)
        self.assertEqual(qs2_arith(x, y, ArithOp.ADD), QSqrt2(3, 0))
        self.assertEqual(qs2_arith(x, y, ArithOp.SUB), QSqrt2(-1, 2))
        self.assertEqual(qs2_arith(x, y, ArithOp.MUL), QSqrt2(0, 1))
        self.assertEqual(qs2_arith(QSqrt2(0, 1), y, ArithOp.DIV) * y, QSqrt2(0, 1))

    def test_powers(self):
        """Integer powers, including negative ones."""
        lam = SQRT2 - 1
        self.assertEqual(lam**2, QSqrt2(3, -2))
        self.assertEqual(lam**-1, SQRT2 + 1)
        self.assertEqual(lam**0, ONE)

    def test_division_by_zero(self):
        """Dividing by zero raises ExactDivisionError."""
        with self.assertRaises(ExactDivisionError):
            ONE / ZERO
        with self.assertRaises(ExactDivisionError):
            ONE / 0
        with self.assertRaises(ZeroDivisionError):
            ZERO.inverse()

    def test_float_operands_are_rejected(self):
        """Floats never enter the field."""
        with self.assertRaises(TypeError):
            QSqrt2(0.5)
        with self.assertRaises(TypeError):
            SQRT2 + 0.5


class TestQSqrt2Order(unittest.TestCase):
    """Exact sign and comparisons."""

    def test_sign_opposite_parts(self):
        """Signs of values whose parts disagree in sign."""
        self.assertEqual(qs2_sign(QSqrt2(3, -2)), 1)
        self.assertEqual(qs2_sign(QSqrt2(1, -1)), -1)
        self.assertEqual(qs2_sign(QSqrt2(-3, 2)), -1)
        self.assertEqual(qs2_sign(QSqrt2(-1, 1)), 1)
        self.assertEqual(qs2_sign(ZERO), 0)

    def test_sign_close_to_zero(self):
        """A tiny positive value a^2 - 2b^2 = 1 keeps its sign."""
        # 99^2 - 2*70^2 = 1, so 99 - 70*sqrt2 is about 0.00505
        self.assertEqual(QSqrt2(99, -70).sign(), 1)
        self.assertEqual(QSqrt2(-99, 70).sign(), -1)

    def test_ordering(self):
        """Comparisons follow the real order."""
        self.assertLess(QSqrt2(1, 0), SQRT2)
        self.assertGreater(QSqrt2(0, 1), Fraction(7, 5))
        self.assertLess(QSqrt2(0, 1), Fraction(3, 2))
        self.assertEqual(abs(QSqrt2(1, -1)), QSqrt2(-1, 1))

    def test_hash_matches_rationals(self):
        """Rational values hash like their Fraction."""
        self.assertEqual(hash(QSqrt2(3)), hash(Fraction(3)))
        self.assertEqual(len({QSqrt2(1, 1), QSqrt2(1, 1), QSqrt2(1)}), 2)


class TestQSqrt2Conversions(unittest.TestCase):
    """Float rendering and JSON."""

    def test_to_float(self):
        """Floats are close to the real value."""
        self.assertAlmostEqual(qs2_to_float(QSqrt2(1, 1)), 1 + math.sqrt(2))
        self.assertAlmostEqual(QSqrt2(99, -70).to_float(), 99 - 70 * math.sqrt(2))

    def test_to_float_overflow_warns(self):
        """Huge values saturate with a RuntimeWarning."""
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            value = QSqrt2(10**400).to_float()
        self.assertEqual(value, math.inf)
        self.assertTrue(any(w.category is RuntimeWarning for w in caught))

    def test_json(self):
        """JSON uses decimal numerator/denominator strings."""
        x = QSqrt2(Fraction(-3, 4), 2)
        self.assertEqual(x.to_json(), {"a": "-3/4", "b": "2/1"})
        self.assertEqual(QSqrt2.from_json(x.to_json()), x)
        self.assertEqual(QSqrt2.from_json({"a": "5", "b": "0"}), QSqrt2(5))

    def test_str(self):
        """Readable text form."""
        self.assertEqual(str(QSqrt2(1, -2)), "1-2√2")
        self.assertEqual(str(SQRT2), "1√2")
        self.assertEqual(str(QSqrt2(3)), "3")



class TestQSqrt2RandomLaws(unittest.TestCase):
    """Field laws and sign rules on seeded random values."""

    COUNT = 300

    def setUp(self):
        self.rng = random.Random(20170203)

    def _fraction(self) -> Fraction:
        return Fraction(self.rng.randint(-60, 60), self.rng.randint(1, 24))

    def _value(self) -> QSqrt2:
        return QSqrt2(self._fraction(), self._fraction())

    def test_field_axioms(self):
        """Associativity, distributivity and multiplicative inverses."""
        for _ in range(self.COUNT):
            x, y, z = self._value(), self._value(), self._value()
            self.assertEqual((x + y) + z, x + (y + z))
            self.assertEqual((x * y) * z, x * (y * z))
            self.assertEqual(x * (y + z), x * y + x * z)
            if not x.is_zero():
                self.assertEqual(x * x.inverse(), ONE)
                self.assertEqual(x / x, ONE)

    def test_arith_ops(self):
        """``qs2_arith`` agrees with the component formulas for every op."""
        for _ in range(self.COUNT):
            x, y = self._value(), self._value()
            a, b, c, d = x.a, x.b, y.a, y.b
            self.assertEqual(qs2_arith(x, y, ArithOp.ADD), QSqrt2(a + c, b + d))
            self.assertEqual(qs2_arith(x, y, ArithOp.SUB), QSqrt2(a - c, b - d))
            self.assertEqual(
                qs2_arith(x, y, ArithOp.MUL), QSqrt2(a * c + 2 * b * d, a * d + b * c)
            )
            if y.is_zero():
                with self.assertRaises(ExactDivisionError):
                    qs2_arith(x, y, ArithOp.DIV)
            else:
                self.assertEqual(qs2_arith(x, y, ArithOp.DIV) * y, x)

    def test_sign_multiplicative(self):
        """``sign(xy) = sign(x) sign(y)``."""
        for _ in range(self.COUNT):
            x, y = self._value(), self._value()
            self.assertEqual(qs2_sign(x * y), qs2_sign(x) * qs2_sign(y))

    def test_sign_matches_float(self):
        """Away from zero the exact sign agrees with the float value."""
        checked = 0
        for _ in range(self.COUNT):
            x = self._value()
            value = qs2_to_float(x)
            if abs(value) > 1e-9:
                checked += 1
                self.assertEqual(qs2_sign(x), 1 if value > 0 else -1)
        self.assertGreater(checked, self.COUNT // 2)


if __name__ == "__main__":
    unittest.main()
