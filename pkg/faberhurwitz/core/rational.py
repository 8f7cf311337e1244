"""
Exact rational scalars.

Every scalar in the package is an element of sympy's ``QQ`` domain (backed by
gmpy2 when available). This module collects the small helpers the rest of the
package uses to build, compare and serialize them.

Key Concepts:
    - ExactRational: the ``QQ`` element type; always in lowest terms with a
      positive denominator
    - JSON form: ``{"num": "<int>", "den": "<int>"}`` with decimal strings

Example:
    >>> from faberhurwitz.core.rational import rational, rational_to_json
    >>> rational_to_json(rational(6, -4))
    {'num': '-3', 'den': '2'}
"""

import math
from fractions import Fraction
from typing import Dict, Union

from sympy import QQ

ExactRational = type(QQ(0))

RationalLike = Union[int, str, Fraction, ExactRational]

ZERO = QQ(0)
ONE = QQ(1)


def rational(numerator: int, denominator: int = 1) -> ExactRational:
    """
    Build an exact rational numerator/denominator.

    Raises:
        ZeroDivisionError: If denominator is zero
    """
    if denominator == 0:
        raise ZeroDivisionError("zero denominator")
    return QQ(int(numerator), int(denominator))


def as_rational(value: RationalLike) -> ExactRational:
    """
    Convert an int, Fraction, "a/b" string or QQ element to ExactRational.

    Raises:
        ValueError: If a string cannot be parsed
    """
    if isinstance(value, ExactRational):
        return value
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return rational(int(num), int(den))
        return QQ(int(text))
    try:
        return QQ.convert(value)
    except Exception as exc:
        raise ValueError(f"not a rational: {value!r}") from exc


def numerator(value: ExactRational) -> int:
    return int(QQ.numer(value))


def denominator(value: ExactRational) -> int:
    return int(QQ.denom(value))


def rational_to_json(value: ExactRational) -> Dict[str, str]:
    """Serialize as {"num", "den"} decimal strings."""
    value = as_rational(value)
    return {"num": str(numerator(value)), "den": str(denominator(value))}


def rational_from_json(data: Dict[str, str]) -> ExactRational:
    """Inverse of rational_to_json."""
    return rational(int(data["num"]), int(data["den"]))


def rational_str(value: ExactRational) -> str:
    value = as_rational(value)
    den = denominator(value)
    if den == 1:
        return str(numerator(value))
    return f"{numerator(value)}/{den}"


def binomial(n: int, k: int) -> int:
    """C(n, k) with C(n, k) = 0 outside 0 ≤ k ≤ n (n ≥ 0)."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def rational_binomial(a: ExactRational, n: int) -> ExactRational:
    """Generalized binomial coefficient C(a, n) for rational a and n ≥ 0."""
    result = ONE
    for i in range(n):
        result = result * (a - i) / (i + 1)
    return result
