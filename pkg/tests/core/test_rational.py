"""
Tests for exact rational helpers.
"""

from fractions import Fraction

import pytest
from sympy import QQ

from faberhurwitz.core.rational import (
    as_rational,
    binomial,
    rational,
    rational_binomial,
    rational_from_json,
    rational_str,
    rational_to_json,
)


class TestRational:
    """Tests for construction and conversion."""

    def test_lowest_terms(self):
        """Test normalization to lowest terms with positive denominator."""
        assert rational(6, -4) == QQ(-3, 2)

    def test_zero_denominator(self):
        """Test a zero denominator raises."""
        with pytest.raises(ZeroDivisionError):
            rational(1, 0)

    @pytest.mark.parametrize("value, expected", [
        (3, QQ(3)),
        ("5/10", QQ(1, 2)),
        (" -7 ", QQ(-7)),
        (Fraction(2, 6), QQ(1, 3)),
        (QQ(4, 3), QQ(4, 3)),
    ])
    def test_as_rational(self, value, expected):
        """Test accepted inputs."""
        assert as_rational(value) == expected

    @pytest.mark.parametrize("value", ["one half", True])
    def test_as_rational_rejects(self, value):
        """Test invalid inputs raise ValueError."""
        with pytest.raises(ValueError):
            as_rational(value)


class TestJson:
    """Tests for the {num, den} form."""

    def test_to_json(self):
        """Test decimal-string serialization."""
        assert rational_to_json(rational(-3, 6)) == {"num": "-1", "den": "2"}

    def test_from_json(self):
        """Test parsing back."""
        assert rational_from_json({"num": "10", "den": "4"}) == QQ(5, 2)

    @pytest.mark.parametrize("value, text", [(QQ(7), "7"), (QQ(-1, 3), "-1/3")])
    def test_str(self, value, text):
        """Test the compact string form."""
        assert rational_str(value) == text


class TestBinomial:
    """Tests for binomial coefficients."""

    @pytest.mark.parametrize("n, k, expected", [(5, 2, 10), (3, 0, 1), (3, 4, 0), (3, -1, 0)])
    def test_integer(self, n, k, expected):
        """Test C(n, k) with zero outside the range."""
        assert binomial(n, k) == expected

    def test_rational(self):
        """Test C(1/2, 2) = −1/8."""
        assert rational_binomial(QQ(1, 2), 2) == QQ(-1, 8)

    def test_rational_matches_integer(self):
        """Test the generalized coefficient agrees on integers."""
        assert rational_binomial(QQ(7), 3) == 35
