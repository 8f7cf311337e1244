"""
Tests for Hurwitz numbers: closed formulas, the monodromy oracle and the
generating series.
"""

import pytest
from sympy import QQ

from faberhurwitz.core.errors import PartitionError
from faberhurwitz.core.partitions import Partition, partitions_up_to
from faberhurwitz.hurwitz import (
    HurwitzQuery,
    class_vector,
    connected_hurwitz,
    double_one_part_closed,
    hurwitz_number,
    hurwitz_series_double,
    hurwitz_series_single,
    monodromy_disconnected,
    single_closed,
    transposition_action,
)
from faberhurwitz.series.profile import TruncProfile

P = Partition.of


class TestSingleClosed:
    """Tests for the closed formula H⁰_α."""

    @pytest.mark.parametrize("alpha, expected", [
        (P(1), QQ(1)),
        (P(2), QQ(1, 2)),
        (P(1, 1), QQ(1)),
        (P(2, 1), QQ(4)),
        (P(3), QQ(1)),
    ])
    def test_values(self, alpha, expected):
        """Test small values of the closed formula."""
        assert single_closed(alpha) == expected

    def test_empty_rejected(self):
        """Test the empty partition is rejected."""
        with pytest.raises(PartitionError):
            single_closed(P())


class TestDoubleOnePart:
    """Tests for the one-part double closed formula."""

    @pytest.mark.parametrize("d, beta, expected", [
        (2, P(1, 1), QQ(1)),
        (3, P(3), QQ(1, 3)),
        (3, P(2, 1), QQ(1)),
        (3, P(1, 1, 1), QQ(6)),
    ])
    def test_values(self, d, beta, expected):
        """Test r!·d^(r−1) on small cases."""
        assert double_one_part_closed(d, beta) == expected

    def test_size_mismatch(self):
        """Test |β| must equal d."""
        with pytest.raises(PartitionError):
            double_one_part_closed(3, P(1, 1))


class TestClassAlgebra:
    """Tests for the transposition class action."""

    def test_action_on_identity(self):
        """Test every transposition of S_3 turns the identity into a 2-cycle type."""
        assert dict(transposition_action(P(1, 1, 1))) == {P(2, 1): 3}

    def test_action_on_three_cycle(self):
        """Test a 3-cycle splits under each of its three transpositions."""
        assert dict(transposition_action(P(3))) == {P(2, 1): 3}

    def test_action_counts_all_transpositions(self):
        """Test the action on cycle type (2,2,1) sums to C(5,2)."""
        assert sum(ways for _, ways in transposition_action(P(2, 2, 1))) == 10

    def test_class_vector_start(self):
        """Test the walk starts at the class size."""
        assert dict(class_vector(P(2, 1), 0)) == {P(2, 1): 3}


class TestMonodromy:
    """Tests for the monodromy oracle."""

    def test_disconnected_single_two_cycle(self):
        """Test the forced transposition gives 1/2!."""
        assert monodromy_disconnected(0, P(2)) == QQ(1, 2)

    def test_disconnected_identity(self):
        """Test the disconnected count for α = (1,1)."""
        assert monodromy_disconnected(0, P(1, 1)) == QQ(1, 2)

    def test_disconnected_one_cycle_double(self):
        """Test H for (j),(j) without branch points is 1/j."""
        assert monodromy_disconnected(0, P(4), P(4)) == QQ(1, 4)

    @pytest.mark.parametrize("alpha", partitions_up_to(5))
    def test_oracle_matches_closed_form(self, alpha):
        """Test connected genus-0 single numbers agree with the closed formula."""
        assert connected_hurwitz(0, alpha) == single_closed(alpha)

    @pytest.mark.parametrize("alpha, beta, expected", [
        (P(2), P(1, 1), QQ(1)),
        (P(3), P(3), QQ(1, 3)),
        (P(2, 1), P(2, 1), QQ(4)),
        (P(1, 1), P(1, 1), QQ(2)),
    ])
    def test_connected_double(self, alpha, beta, expected):
        """Test connected double numbers in the |Aut α||Aut β| convention."""
        assert connected_hurwitz(0, alpha, beta) == expected

    @pytest.mark.parametrize("alpha, beta", [
        (P(2, 1), P(3)),
        (P(2, 2), P(3, 1)),
        (P(2, 1, 1), P(4)),
        (P(2), P(2)),
    ])
    @pytest.mark.parametrize("g", [0, 1])
    def test_symmetry(self, g, alpha, beta):
        """Test H^g_{α,β} = H^g_{β,α}."""
        assert connected_hurwitz(g, alpha, beta) == connected_hurwitz(g, beta, alpha)

    @pytest.mark.parametrize("beta", [P(4), P(3, 1), P(2, 2), P(2, 1, 1), P(1, 1, 1, 1)])
    def test_one_part_oracle(self, beta):
        """Test the monodromy path agrees with the one-part closed form."""
        assert connected_hurwitz(0, P(4), beta) == double_one_part_closed(4, beta)

    def test_no_branch_points(self):
        """Test configurations with r = 0 count the class alone."""
        assert connected_hurwitz(0, P(1), P(1)) == QQ(1)
        assert monodromy_disconnected(0, P(2), P(2)) == QQ(1, 2)


class TestHurwitzQuery:
    """Tests for HurwitzQuery and hurwitz_number."""

    def test_size_mismatch(self):
        """Test α and β must have the same size."""
        with pytest.raises(PartitionError):
            HurwitzQuery(0, P(2), P(1))

    def test_branch_points(self):
        """Test the branch count of single and double queries."""
        assert HurwitzQuery(0, P(2, 1)).branch_points == 3
        assert HurwitzQuery(1, P(2), P(1, 1)).branch_points == 3

    @pytest.mark.parametrize("query", [
        HurwitzQuery(0, P(3, 1)),
        HurwitzQuery(0, P(3), P(2, 1)),
        HurwitzQuery(0, P(2, 2), P(3, 1)),
    ])
    def test_oracle_agrees(self, query):
        """Test the oracle flag does not change the value."""
        assert hurwitz_number(query, oracle=True) == hurwitz_number(query)


class TestHurwitzSeries:
    """Tests for the generating series."""

    def test_single_coefficients(self):
        """Test [z p1] = 1 and [z² p2] = 1/2."""
        H = hurwitz_series_single(TruncProfile(z_max=3))
        assert H.coefficient({"z": 1, "p1": 1}) == 1
        assert H.coefficient({"z": 2, "p2": 1}) == QQ(1, 2)

    def test_double_coefficients(self):
        """Test [z p1 q1 u] = 1 and the (2),(1,1) term."""
        H = hurwitz_series_double(TruncProfile(z_max=3))
        assert H.coefficient({"z": 1, "p1": 1, "q1": 1, "u": 1}) == 1
        assert H.coefficient({"z": 2, "p2": 1, "q1": 2, "u": 2}) == QQ(1, 2)
