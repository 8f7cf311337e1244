"""
Tests for the tree series, ζ^g and the predicted Faber–Hurwitz forms.
"""

import pytest

from faberhurwitz.core.errors import PartitionError, TruncationError
from faberhurwitz.core.linear import FaberKey
from faberhurwitz.core.partitions import Partition
from faberhurwitz.degeneration.joincut import faber_hurwitz
from faberhurwitz.localization.treeseries import (
    faber_keys,
    predicted_fh,
    solve_tree_series,
    tree_residuals,
    xi_series,
    zeta_series,
)
from faberhurwitz.series.profile import TruncProfile

TINY = TruncProfile(z_max=3, index_max=3)
SMALL = TruncProfile(z_max=4, index_max=4, u_max=8)


class TestTreeSeries:
    """Tests for solve_tree_series."""

    def test_leading_term(self):
        """Test f_1 starts with u^{−1}·z·p_1."""
        tree = solve_tree_series(TINY)
        assert tree.f[1].coefficient({"z": 1, "p1": 1, "u": -1}) == 1

    def test_residuals_vanish(self):
        """Test every functional equation holds at the solved series."""
        residuals = tree_residuals(solve_tree_series(TINY))
        assert residuals
        assert all(residual.is_zero() for residual in residuals.values())

    def test_indices(self):
        """Test one f and one g series per weight up to z_max."""
        tree = solve_tree_series(TINY)
        assert sorted(tree.f) == [1, 2, 3]
        assert sorted(tree.g) == [1, 2, 3]

    def test_xi_negative_index(self):
        """Test ξ^{(i)} needs i >= 0."""
        with pytest.raises(PartitionError):
            xi_series(-1, TINY)


class TestFaberKeys:
    """Tests for faber_keys."""

    def test_genus_two_one_point(self):
        """Test the one-point symbols of genus 2 are ⟨τ1⟩ and ⟨τ0λ1⟩."""
        assert faber_keys(2, 1) == [FaberKey(2, (1,), 0), FaberKey(2, (0,), 1)]

    def test_dimension_constraint(self):
        """Test every key satisfies k + Σa = g − 2 + n."""
        for key in faber_keys(3, 3):
            assert key.k + sum(key.indices) == 3 - 2 + 3


class TestZeta:
    """Tests for zeta_series."""

    def test_genus_zero_rejected(self):
        """Test ζ^g needs g >= 1."""
        with pytest.raises(PartitionError):
            zeta_series(0, TINY)

    def test_parts_bound(self):
        """Test n_max = 1 keeps only one-point symbols."""
        zeta = zeta_series(1, TINY, n_max=1)
        assert all(key.n == 1 for key in zeta.keys())


class TestPredictedFH:
    """Tests for predicted_fh."""

    def test_genus_one_one_point(self):
        """Test the one-part forms reproduce F^1_(d) with ⟨τ0⟩_1 = 1."""
        forms = predicted_fh(1, SMALL, 1)
        values = {FaberKey(1, (0,), 0): 1}
        for d in range(1, 5):
            alpha = Partition.of(d)
            assert forms[alpha].evaluate(values) == faber_hurwitz(1, alpha)

    def test_window_too_small(self):
        """Test genus 4 needs u exact to 6."""
        with pytest.raises(TruncationError):
            predicted_fh(4, SMALL)

    def test_genus_zero_rejected(self):
        """Test predicted_fh needs g >= 1."""
        with pytest.raises(PartitionError):
            predicted_fh(0, SMALL)
