"""
Tests for truncated multivariate series.
"""

import pytest
from sympy import QQ

from faberhurwitz.core.errors import IncompatibleSeriesError, NotInImageError, TruncationError
from faberhurwitz.core.partitions import Partition
from faberhurwitz.series.multiseries import (
    MultiSeries,
    canonical_variables,
    partition_exponents,
    variable_sort_key,
)
from faberhurwitz.series.profile import TruncProfile

SMALL = TruncProfile(z_max=5, y_max=6, u_min=-4, u_max=6)


@pytest.fixture
def z():
    return MultiSeries.variable("z", SMALL)


class TestVariables:
    """Tests for variable naming and ordering."""

    def test_canonical_order(self):
        """Test single variables come before indexed ones, indices numerically."""
        assert canonical_variables(["p10", "z", "p2", "u", "x1"]) == ("z", "u", "p2", "p10", "x1")

    def test_invalid_name(self):
        """Test an unknown variable name is rejected."""
        with pytest.raises(IncompatibleSeriesError):
            variable_sort_key("w")

    def test_partition_exponents(self):
        """Test p_α as an exponent map."""
        assert partition_exponents("p", Partition.of(2, 2, 1)) == {"p2": 2, "p1": 1}


class TestArithmetic:
    """Tests for ring operations and truncation."""

    def test_product(self, z):
        """Test (1 + z)(1 − z) = 1 − z²."""
        product = (1 + z) * (1 - z)
        assert product.coefficient({"z": 2}) == -1
        assert product.coefficient({"z": 1}) == 0
        assert product.constant_term() == 1

    def test_truncation(self, z):
        """Test terms beyond z_max are dropped."""
        assert (z ** 5 * z).is_zero()

    def test_union_of_variables(self, z):
        """Test sums over different variable sets live on the union."""
        total = z + MultiSeries.variable("p1", SMALL)
        assert total.variables == ("z", "p1")

    def test_inverse(self, z):
        """Test 1/(1 − z) = Σ z^k to truncation."""
        inverse = (1 - z).inverse()
        assert all(inverse.coefficient({"z": k}) == 1 for k in range(6))

    def test_laurent_inverse(self):
        """Test 1/(1 − u) in the u direction fills the window."""
        u = MultiSeries.variable("u", SMALL)
        inverse = (1 - u).inverse()
        assert inverse.coefficient({"u": 6}) == 1
        assert inverse.degree_in("u") == 6

    def test_u_below_window(self):
        """Test a u-exponent below u_min raises TruncationError."""
        with pytest.raises(TruncationError):
            MultiSeries.monomial({"u": -5}, 1, SMALL)

    def test_zero_inverse(self, z):
        """Test inverting a series without grade-0 part raises."""
        with pytest.raises(ZeroDivisionError):
            z.inverse()

    def test_exp_log(self, z):
        """Test exp(log(1 + z)) = 1 + z and [z²] log(1 + z) = −1/2."""
        log = (1 + z).log()
        assert log.coefficient({"z": 2}) == QQ(-1, 2)
        assert log.exp() == 1 + z

    def test_log_needs_unit(self, z):
        """Test log refuses a grade-0 part other than 1."""
        with pytest.raises(TruncationError):
            (2 + z).log()


class TestCalculus:
    """Tests for derivatives, substitution and exact division."""

    def test_derive(self, z):
        """Test ∂_z z³ = 3z²."""
        assert (z ** 3).derive("z").coefficient({"z": 2}) == 3

    def test_derive_unknown(self, z):
        """Test deriving in an undeclared variable raises."""
        with pytest.raises(IncompatibleSeriesError):
            z.derive("p1")

    def test_euler(self, z):
        """Test (z∂_z)² z³ = 9z³."""
        assert (z ** 3).euler("z", 2).coefficient({"z": 3}) == 9

    def test_substitute(self, z):
        """Test z -> 2z on z²."""
        assert (z ** 2).substitute({"z": 2 * z}).coefficient({"z": 2}) == 4

    def test_substitute_grade_zero(self, z):
        """Test a grading variable cannot be bound to a series with a constant."""
        with pytest.raises(TruncationError):
            (z ** 2).substitute({"z": 1 + z})

    def test_chained_substitution(self):
        """Test bindings that refer to other bound variables act simultaneously."""
        x1 = MultiSeries.variable("x1", SMALL)
        x2 = MultiSeries.variable("x2", SMALL)
        x3 = MultiSeries.variable("x3", SMALL)
        result = (x1 * x2).substitute({"x1": 2 * x2, "x2": 3 * x3})
        assert result.coefficient({"x2": 1, "x3": 1}) == 6

    def test_divide_difference(self):
        """Test (x1² − x2²)/(x1 − x2) = x1 + x2."""
        x1 = MultiSeries.variable("x1", SMALL)
        x2 = MultiSeries.variable("x2", SMALL)
        assert (x1 * x1 - x2 * x2).divide_difference("x1", "x2") == x1 + x2

    def test_divide_difference_not_divisible(self):
        """Test x1 is not divisible by x1 − x2."""
        x1 = MultiSeries.variable("x1", SMALL)
        x2 = MultiSeries.variable("x2", SMALL)
        with pytest.raises(NotInImageError):
            (x1 + 0 * x2).embed(["x2"]).divide_difference("x1", "x2")


class TestStructure:
    """Tests for structural helpers and serialization."""

    def test_rename(self):
        """Test a swap of x variables."""
        f = MultiSeries.monomial({"x1": 2, "x2": 1}, 1, SMALL)
        assert f.rename({"x1": "x2", "x2": "x1"}).coefficient({"x1": 1, "x2": 2}) == 1

    def test_rename_collision(self):
        """Test renaming two variables onto one raises."""
        f = MultiSeries.monomial({"x1": 1, "x2": 1}, 1, SMALL)
        with pytest.raises(IncompatibleSeriesError):
            f.rename({"x1": "x2"})

    def test_extract(self, z):
        """Test [u¹] of z·u + z²."""
        u = MultiSeries.variable("u", SMALL)
        assert (z * u + z * z).extract("u", 1) == z

    def test_to_json(self, z):
        """Test the JSON form lists monomials in graded order."""
        rows = (1 + z * z.scale("1/2")).to_json()
        assert rows == [
            {"exponents": {}, "num": "1", "den": "1"},
            {"exponents": {"z": 2}, "num": "1", "den": "2"},
        ]

    def test_equality_with_scalar(self):
        """Test a constant series equals its value."""
        assert MultiSeries.constant(3, SMALL) == 3
