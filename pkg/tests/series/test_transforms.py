"""
Tests for the series transforms and solvers.
"""

import pytest
from sympy import QQ

from faberhurwitz.core.errors import ConvergenceError, NotInImageError, PolynomialityError
from faberhurwitz.series.multiseries import MultiSeries
from faberhurwitz.series.profile import TruncProfile
from faberhurwitz.series.transforms import (
    TopMode,
    change_to_y,
    lagrange_coefficients,
    lagrange_invert,
    lambda_sub,
    omega_sub,
    shift_to_y,
    solve_fixed_point,
    symmetrize,
    top_degree,
    tree_function,
    tree_y_series,
    y_inverse_coefficients,
)

SMALL = TruncProfile(z_max=4, y_max=6, u_min=-4, u_max=6)


class TestSymmetrize:
    """Tests for Ξ_m."""

    def test_two_distinct_parts(self):
        """Test p2 p1 z³ goes to x1²x2 + x1x2²."""
        f = MultiSeries.monomial({"z": 3, "p2": 1, "p1": 1}, 1, SMALL)
        result = symmetrize(f, 2)
        assert result.coefficient({"x1": 2, "x2": 1}) == 1
        assert result.coefficient({"x1": 1, "x2": 2}) == 1

    def test_length_filter(self):
        """Test monomials with the wrong number of parts are dropped."""
        f = MultiSeries.monomial({"z": 2, "p2": 1}, 1, SMALL)
        assert symmetrize(f, 2).is_zero()

    def test_bad_m(self):
        """Test m = 0 is rejected."""
        with pytest.raises(ValueError):
            symmetrize(MultiSeries.zero(SMALL), 0)


class TestSubstitutions:
    """Tests for Λ, Ω, C and the y shift."""

    def test_lambda(self):
        """Test Λ x1 = x1/(1 − u)."""
        x1 = MultiSeries.variable("x1", SMALL)
        result = lambda_sub(x1)
        assert result.coefficient({"x1": 1, "u": 2}) == 1

    def test_lambda_flips_u(self):
        """Test Λ u = −u."""
        u = MultiSeries.variable("u", SMALL)
        assert lambda_sub(u).coefficient({"u": 1}) == -1

    def test_omega(self):
        """Test Ω q_i = i^(i−1)/i!."""
        f = MultiSeries.variable("q3", SMALL).scale(2)
        assert omega_sub(f) == QQ(3)

    def test_change_to_y_inverts(self):
        """Test C(Σ_{n≥1} n^n x^n/n!) = y − 1."""
        f = tree_y_series("x1", SMALL) - 1
        result = change_to_y(f)
        assert result == MultiSeries.variable("y1", SMALL) - 1

    def test_shift_to_y(self):
        """Test s1² = y1² − 2y1 + 1."""
        s = MultiSeries.monomial({"s1": 2}, 1, SMALL)
        result = shift_to_y(s)
        assert result.coefficient({"y1": 1}) == -2
        assert result.constant_term() == 1


class TestTopDegree:
    """Tests for T'."""

    def test_faber_mode(self):
        """Test g = 1, m = 1 keeps total degree 2."""
        y1 = MultiSeries.variable("y1", SMALL)
        top = top_degree(3 * y1 * y1 + y1, TopMode.FABER, genus=1)
        assert top == 3 * y1 * y1

    def test_terms_above(self):
        """Test terms above the expected degree raise."""
        y1 = MultiSeries.variable("y1", SMALL)
        with pytest.raises(PolynomialityError):
            top_degree(y1 ** 3, TopMode.FABER, genus=1)

    def test_nothing_at_top(self):
        """Test an empty top raises."""
        y1 = MultiSeries.variable("y1", SMALL)
        with pytest.raises(PolynomialityError):
            top_degree(y1, TopMode.FABER, genus=1)

    def test_xi_mode(self):
        """Test the per-u maximal degree."""
        y1 = MultiSeries.variable("y1", SMALL)
        u = MultiSeries.variable("u", SMALL)
        f = y1 + y1 ** 3 + u * y1 ** 2 + u * y1
        top = top_degree(f, TopMode.XI)
        assert top == y1 ** 3 + u * y1 ** 2

    def test_explicit_degree(self):
        """Test an explicit degree overrides the mode rule."""
        y1 = MultiSeries.variable("y1", SMALL)
        assert top_degree(y1 ** 4 + y1, TopMode.HURWITZ, degree=4) == y1 ** 4


class TestSolvers:
    """Tests for Lagrange inversion and the fixed-point solver."""

    def test_lagrange_catalan(self):
        """Test the inverse of z − z² has Catalan coefficients."""
        z = MultiSeries.variable("z", SMALL)
        inverse = lagrange_invert(z - z * z)
        assert [inverse.coefficient({"z": k}) for k in range(1, 5)] == [1, 1, 2, 5]

    def test_lagrange_needs_linear_term(self):
        """Test z² has no compositional inverse."""
        z = MultiSeries.variable("z", SMALL)
        with pytest.raises(NotInImageError):
            lagrange_invert(z * z)

    def test_lagrange_tree_function(self):
        """Test the inverse of the tree function is v·e^{−v}."""
        series = [QQ(0), QQ(1), QQ(1), QQ(3, 2), QQ(8, 3)]
        assert lagrange_coefficients(series, 4) == [0, 1, -1, QQ(1, 2), QQ(-1, 6)]

    def test_lagrange_constant_term(self):
        """Test a constant term is rejected."""
        with pytest.raises(NotInImageError):
            lagrange_coefficients([QQ(1), QQ(1)], 2)

    def test_tree_series(self):
        """Test w = Σ n^(n−1) v^n/n! and y = Σ n^n v^n/n!."""
        w = tree_function("z", SMALL)
        y = tree_y_series("z", SMALL)
        assert w.coefficient({"z": 3}) == QQ(3, 2)
        assert y.coefficient({"z": 3}) == QQ(9, 2)
        assert y.constant_term() == 1

    def test_y_inverse(self):
        """Test the inverse of v + 2v² + 9v³/2 starts v − 2v² + 7v³/2."""
        assert y_inverse_coefficients(3)[1:] == (QQ(1), QQ(-2), QQ(7, 2))

    def test_fixed_point(self):
        """Test s = z + s² solves to the Catalan series."""
        z = MultiSeries.variable("z", SMALL)
        solved = solve_fixed_point({"s": lambda v: z + v["s"] * v["s"]}, SMALL)
        assert [solved["s"].coefficient({"z": k}) for k in range(1, 5)] == [1, 1, 2, 5]

    def test_fixed_point_diverges(self):
        """Test a system without progress raises ConvergenceError."""
        z = MultiSeries.variable("z", SMALL)
        with pytest.raises(ConvergenceError):
            solve_fixed_point({"s": lambda v: v["s"] + z}, SMALL, max_passes=3)
