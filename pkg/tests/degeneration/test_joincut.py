"""
Tests for the join-cut recursion and the Faber–Hurwitz series.
"""

import pytest
from sympy import QQ

from faberhurwitz.core.errors import PartitionError
from faberhurwitz.core.partitions import Partition, partitions_up_to
from faberhurwitz.degeneration import (
    FHKey,
    faber_hurwitz,
    fh_series,
    joincut_residual,
    one_part_closed,
    symmetrized_fh,
)
from faberhurwitz.series.profile import TruncProfile
from faberhurwitz.series.transforms import symmetrize

P = Partition.of

SMALL = TruncProfile(z_max=4, index_max=4)


class TestFHKey:
    """Tests for FHKey."""

    def test_genus_zero_rejected(self):
        """Test g = 0 is outside the domain."""
        with pytest.raises(PartitionError):
            FHKey(0, P(2))

    def test_empty_rejected(self):
        """Test the empty partition is rejected."""
        with pytest.raises(PartitionError):
            FHKey(1, P())

    def test_r_fab(self):
        """Test r^Fab = |α| + l(α) − 1, independent of g."""
        assert FHKey(1, P(2)).r_fab == 2
        assert FHKey(2, P(2, 1)).r_fab == 4


class TestFaberHurwitz:
    """Tests for faber_hurwitz."""

    @pytest.mark.parametrize("g, alpha, expected", [
        (1, P(1), QQ(1)),
        (1, P(2), QQ(5)),
        (1, P(3), QQ(39)),
        (1, P(1, 1), QQ(12)),
        (1, P(2, 1), QQ(168)),
        (2, P(1), QQ(1)),
        (2, P(2), QQ(17)),
    ])
    def test_values(self, g, alpha, expected):
        """Test values worked out by hand from the recursion."""
        assert faber_hurwitz(g, alpha) == expected

    def test_genus_zero_rejected(self):
        """Test faber_hurwitz refuses g = 0."""
        with pytest.raises(PartitionError):
            faber_hurwitz(0, P(1))

    @pytest.mark.parametrize("g", [1, 2, 3])
    @pytest.mark.parametrize("d", range(1, 7))
    def test_one_part_closed_agrees(self, g, d):
        """Test the recursion matches the one-part closed formula."""
        assert faber_hurwitz(g, P(d)) == one_part_closed(g, d)

    @pytest.mark.parametrize("g", [1, 2, 3])
    def test_nonnegative(self, g):
        """Test every F^g_α with |α| ≤ 5 is nonnegative."""
        assert all(faber_hurwitz(g, alpha) >= 0 for alpha in partitions_up_to(5))


class TestOnePartClosed:
    """Tests for one_part_closed."""

    @pytest.mark.parametrize("g, d, expected", [
        (1, 1, QQ(1)),
        (1, 2, QQ(5)),
        (2, 1, QQ(1)),
        (1, 3, QQ(39)),
    ])
    def test_values(self, g, d, expected):
        """Test small evaluations with 0⁰ = 1."""
        assert one_part_closed(g, d) == expected

    def test_bad_input(self):
        """Test d = 0 is rejected."""
        with pytest.raises(PartitionError):
            one_part_closed(1, 0)


class TestFHSeries:
    """Tests for fh_series."""

    def test_coefficients(self):
        """Test [z p1], [z² p2] and [z² p1²] of F¹."""
        F = fh_series(1, SMALL)
        assert F.coefficient({"z": 1, "p1": 1}) == 1
        assert F.coefficient({"z": 2, "p2": 1}) == QQ(5, 2)
        assert F.coefficient({"z": 2, "p1": 2}) == 1

    def test_genus_zero_rejected(self):
        """Test the series needs g ≥ 1."""
        with pytest.raises(PartitionError):
            fh_series(0, SMALL)


class TestJoinCutResidual:
    """Tests for the join-cut equation."""

    @pytest.mark.parametrize("g", [1, 2, 3])
    def test_residual_vanishes(self, g):
        """Test the recursion solves the join-cut equation."""
        assert joincut_residual(g, SMALL).is_zero()

    def test_perturbation_detected(self):
        """Test changing F¹_(2) leaves a residual at z² p2."""
        perturbed = fh_series(1, SMALL, overrides={P(2): QQ(6)})
        residual = joincut_residual(1, SMALL, fh=perturbed)
        assert residual.coefficient({"z": 2, "p2": 1}) != 0


class TestSymmetrizedFH:
    """Tests for symmetrized_fh."""

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_matches_symmetrize(self, m):
        """Test the direct builder agrees with Ξ_m applied to F¹."""
        direct = symmetrized_fh(1, m, SMALL.z_max, SMALL)
        via_series = symmetrize(fh_series(1, SMALL), m)
        assert (direct - via_series).is_zero()

    def test_one_point_coefficient(self):
        """Test [x1²] Ξ₁F¹ = F¹_(2)/2!."""
        direct = symmetrized_fh(1, 1, 3, SMALL)
        assert direct.coefficient({"x1": 2}) == QQ(5, 2)
