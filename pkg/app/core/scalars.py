"""
Exact rational-complex scalars.

Scalars are elements of sympy's Gaussian rational field QQ_I, so every
value is a pair of reduced rationals and equality is structural.
"""

from fractions import Fraction
from typing import Union

from sympy import QQ, QQ_I

Scalar = type(QQ_I(0, 0))

ZERO = QQ_I(0, 0)
ONE = QQ_I(1, 0)
I_UNIT = QQ_I(0, 1)

Number = Union[int, Fraction, "Scalar"]


def scalar(real=0, imag=0) -> Scalar:
    """Build real + imag*i from ints, Fractions, 'p/q' strings or sympy rationals."""
    return QQ_I(_rational(real), _rational(imag))


def _rational(value):
    if isinstance(value, str):
        value = Fraction(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, int):
        return QQ(value)
    return QQ.convert(value)


def as_scalar(value: Number) -> Scalar:
    if isinstance(value, Scalar):
        return value
    return scalar(value)


def rational(p: int, q: int = 1) -> Scalar:
    return QQ_I(QQ(p, q), QQ(0))


def conj(a: Scalar) -> Scalar:
    return QQ_I(a.x, -a.y)


def scalar_arith(a: Scalar, b: Scalar = None, op: str = "add") -> Scalar:
    """
    Exact arithmetic on two scalars.

    Args:
        a: Left operand
        b: Right operand (ignored for conj)
        op: One of 'add', 'mul', 'conj', 'div'

    Returns:
        Scalar in canonical form

    Raises:
        ZeroDivisionError: For div by zero
        ValueError: For an unknown op
    """
    if op == "conj":
        return conj(a)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise ZeroDivisionError("Scalar division by zero")
        return a / b
    raise ValueError(f"Unknown scalar operation '{op}'")


def _format_rational(q) -> str:
    num, den = int(q.numerator), int(q.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def format_scalar(a: Scalar) -> str:
    """Render as '1/6', '1/2i' or '1/3-2i'."""
    re_part, im_part = a.x, a.y
    if not im_part:
        return _format_rational(re_part)
    imag = _format_rational(abs(im_part))
    imag = "i" if imag == "1" else f"{imag}i"
    if not re_part:
        return imag if im_part > 0 else f"-{imag}"
    sign = "+" if im_part > 0 else "-"
    return f"{_format_rational(re_part)}{sign}{imag}"
