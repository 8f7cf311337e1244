"""
Tests for series with rational-function coefficients.
"""

import pytest

from faberhurwitz.core.errors import IncompatibleSeriesError, NotInImageError, TruncationError
from faberhurwitz.series.multiseries import MultiSeries
from faberhurwitz.series.profile import TruncProfile
from faberhurwitz.series.ratfunc import (
    RationalFunctionSeries,
    ab_series,
    as_polynomial,
    build_AB_Y,
    delta,
    invert_delta,
    ordered_set_partitions,
    permute_generators,
    rational_field,
    sym,
    y_of_u,
)


@pytest.fixture
def K1():
    return rational_field(1)


@pytest.fixture
def K2():
    return rational_field(2)


class TestArithmetic:
    """Tests for RationalFunctionSeries arithmetic."""

    def test_inverse(self, K1):
        """Test (1 − y1 t)·(1 − y1 t)^(−1) = 1."""
        y1 = K1.gens[0]
        f = RationalFunctionSeries(K1, {0: 1, 1: -y1}, 5)
        inverse = f.inverse()
        assert inverse.coefficient(3) == y1 ** 3
        assert f * inverse == 1

    def test_laurent_inverse(self, K1):
        """Test the inverse of t·y1 is t^(−1)/y1."""
        y1 = K1.gens[0]
        f = RationalFunctionSeries.monomial(K1, 1, y1, 5)
        inverse = f.inverse()
        assert inverse.valuation == -1
        assert inverse.coefficient(-1) == 1 / y1

    def test_shift(self, K1):
        """Test multiplication by t^k moves the order."""
        f = RationalFunctionSeries.constant(K1, 2, 3).shift(2)
        assert f.coefficient(2) == 2
        assert f.order == 5

    def test_beyond_order(self, K1):
        """Test asking past the order raises."""
        with pytest.raises(TruncationError):
            RationalFunctionSeries.constant(K1, 1, 3).coefficient(4)

    def test_binomial_power(self, K1):
        """Test ((1 + t)^(1/2))² = 1 + t."""
        f = RationalFunctionSeries(K1, {0: 1, 1: 1}, 6)
        root = f.binomial_power("1/2")
        assert root * root == f

    def test_binomial_power_needs_unit(self, K1):
        """Test a constant term other than 1 is rejected."""
        with pytest.raises(NotInImageError):
            RationalFunctionSeries(K1, {0: 2, 1: 1}, 4).binomial_power("1/2")

    def test_compose(self, K1):
        """Test 1/(1 − s) at s = y1 t."""
        y1 = K1.gens[0]
        geometric = RationalFunctionSeries(K1, {k: 1 for k in range(5)}, 4)
        inner = RationalFunctionSeries.monomial(K1, 1, y1, 4)
        assert geometric.compose(inner).coefficient(3) == y1 ** 3

    def test_mixed_fields(self, K1, K2):
        """Test series over different fields do not combine."""
        with pytest.raises(IncompatibleSeriesError):
            RationalFunctionSeries.constant(K1, 1, 2) + RationalFunctionSeries.constant(K2, 1, 2)

    def test_even_part(self, K1):
        """Test E keeps even exponents."""
        f = RationalFunctionSeries(K1, {0: 1, 1: 2, 2: 3}, 4)
        assert f.even_part() == RationalFunctionSeries(K1, {0: 1, 2: 3}, 4)

    def test_from_multiseries(self, K1):
        """Test conversion of t·y1 + t²."""
        profile = TruncProfile(t_max=4)
        t = MultiSeries.variable("t", profile)
        y1 = MultiSeries.variable("y1", profile)
        f = RationalFunctionSeries.from_multiseries(t * y1 + t * t, K1)
        assert f.order == 4
        assert f.coefficient(1) == K1.gens[0]
        assert f.coefficient(2) == 1

    def test_from_multiseries_foreign_variable(self, K1):
        """Test a variable outside the field is rejected."""
        profile = TruncProfile(t_max=4)
        with pytest.raises(IncompatibleSeriesError):
            RationalFunctionSeries.from_multiseries(MultiSeries.variable("y2", profile), K1)


class TestCoefficientOperators:
    """Tests for Δ_k, its inverse and generator permutations."""

    def test_delta(self, K1):
        """Test Δ₂ y1³ = 3y1⁴."""
        y1 = K1.gens[0]
        assert delta(2, y1 ** 3) == 3 * y1 ** 4

    def test_invert_delta(self, K2):
        """Test Δ₂ inverts back to y1²y2 + 3y2²."""
        y1, y2 = K2.gens
        P = y1 ** 2 * y2 + 3 * y2 ** 2
        assert invert_delta(2, delta(2, P)) == P

    @pytest.mark.parametrize("k", [1, 3])
    def test_invert_delta_other_k(self, K2, k):
        """Test Δ_k inversion for other k on y1 y2²."""
        y1, y2 = K2.gens
        P = y1 * y2 ** 2
        assert invert_delta(k, delta(k, P)) == P

    def test_not_in_image(self, K2):
        """Test y1 y2 is not in the image of Δ₂."""
        y1, y2 = K2.gens
        with pytest.raises(NotInImageError):
            invert_delta(2, y1 * y2)

    def test_constant_not_in_image(self, K1):
        """Test a nonzero constant is never in the image."""
        with pytest.raises(NotInImageError):
            invert_delta(2, K1.one * 5)

    def test_as_polynomial(self, K1):
        """Test 1/y1 is not a polynomial."""
        y1 = K1.gens[0]
        with pytest.raises(NotInImageError):
            as_polynomial(1 / y1)

    def test_permute(self, K2):
        """Test swapping y1 and y2."""
        y1, y2 = K2.gens
        assert permute_generators(y1 / y2, [1, 0]) == y2 / y1

    def test_series_delta(self, K1):
        """Test Δ₁ acts on every coefficient."""
        y1 = K1.gens[0]
        f = RationalFunctionSeries(K1, {0: y1 ** 2, 2: y1}, 3)
        assert f.delta(1) == RationalFunctionSeries(K1, {0: 2 * y1 ** 2, 2: y1}, 3)


class TestSym:
    """Tests for ordered set partitions and sym."""

    def test_ordered_set_partitions(self):
        """Test blocks of sizes (1, 1) over two variables."""
        assert list(ordered_set_partitions(2, [1, 1])) == [((0,), (1,)), ((1,), (0,))]

    def test_count(self):
        """Test there are 3 ways to split three variables as (1, 2)."""
        assert len(list(ordered_set_partitions(3, [1, 2]))) == 3

    def test_bad_sizes(self):
        """Test sizes must add up to m."""
        with pytest.raises(IncompatibleSeriesError):
            list(ordered_set_partitions(3, [1, 1]))

    def test_sym(self, K2):
        """Test sym_{1,1} of the first variable sums over both orders."""
        y1, y2 = K2.gens
        assert sym([1, 1], lambda idx: K2.gens[idx[0]]) == y1 + y2


class TestABSeries:
    """Tests for the B, A and Ŷ series."""

    def test_b_squared(self, K1):
        """Test B² = 1 − 4y²t."""
        ab = ab_series(K1, 5)
        y1 = K1.gens[0]
        assert ab.b(0) * ab.b(0) == RationalFunctionSeries(K1, {0: 1, 1: -4 * y1 ** 2}, 5)

    def test_a_quadratic(self, K1):
        """Test A = y(A² + t)."""
        ab = ab_series(K1, 5)
        a = ab.a(0)
        assert (a * a + ab.t()).scale(K1.gens[0]) == a

    def test_b_inverse(self, K1):
        """Test B·B^(−1) = 1."""
        ab = ab_series(K1, 5)
        assert ab.b(0) * ab.b_inverse(0) == 1

    def test_y_hat(self, K1):
        """Test Ŷ·(1 − A y) = y."""
        ab = ab_series(K1, 4)
        y1 = K1.gens[0]
        assert ab.y_hat(0, 0) * (ab.one() - ab.a(0).scale(y1)) == y1

    def test_y_of_u(self, K1):
        """Test Y(u)·(1 − u y) = y."""
        y1 = K1.gens[0]
        Y = y_of_u(K1, 0, 3)
        assert Y * RationalFunctionSeries(K1, {0: 1, 1: -y1}, 3, "u") == RationalFunctionSeries.constant(K1, y1, 3, "u")

    def test_build_from_profile(self):
        """Test the records follow the profile's t-bound."""
        assert build_AB_Y(2, TruncProfile(t_max=3)).order == 3
