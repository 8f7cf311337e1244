"""
Tests for truncation profiles and their configuration layers.
"""

import json

import pytest

from faberhurwitz.core.errors import TruncationError
from faberhurwitz.series.profile import DEFAULT_PROFILE, PROFILE_ENV_VAR, TruncProfile, load_profile


class TestTruncProfile:
    """Tests for TruncProfile."""

    def test_defaults(self):
        """Test the built-in bounds."""
        assert DEFAULT_PROFILE.z_max == 6
        assert DEFAULT_PROFILE.t_max == 8
        assert (DEFAULT_PROFILE.u_min, DEFAULT_PROFILE.u_max) == (-12, 12)
        assert DEFAULT_PROFILE.y_max == 40

    @pytest.mark.parametrize("changes", [
        {"z_max": -1},
        {"u_min": 1},
        {"u_min": -3, "u_max": -4},
        {"b_max": -2},
    ])
    def test_invalid_bounds(self, changes):
        """Test invalid bounds raise at construction."""
        with pytest.raises(TruncationError):
            TruncProfile(**changes)

    def test_hashable(self):
        """Test profiles can key caches."""
        assert len({TruncProfile(z_max=3), TruncProfile(z_max=3)}) == 1

    def test_capped_never_raises_bound(self):
        """Test capping only lowers a bound."""
        profile = TruncProfile(z_max=4)
        assert profile.capped("z", 2).z_max == 2
        assert profile.capped("z", 9).z_max == 4
        assert profile.capped("x", 5).y_max == 5

    def test_intersect(self):
        """Test the intersection takes the tighter bound everywhere."""
        left = TruncProfile(z_max=3, u_min=-4, u_max=10, b_max=7)
        right = TruncProfile(z_max=5, u_min=-8, u_max=6)
        both = left.intersect(right)
        assert (both.z_max, both.u_min, both.u_max, both.b_max) == (3, -4, 6, 7)

    def test_derived_bounds(self):
        """Test the branch bound and exact u-bound."""
        profile = TruncProfile(z_max=4, u_max=10)
        assert profile.branch_bound == 10
        assert profile.exact_u_max == 6
        assert profile.with_bounds(b_max=3).branch_bound == 3


class TestProfileLoading:
    """Tests for mapping, file and environment resolution."""

    def test_from_mapping(self):
        """Test a mapping overrides the base."""
        profile = TruncProfile.from_mapping({"z_max": 3, "t_max": "5"})
        assert (profile.z_max, profile.t_max, profile.y_max) == (3, 5, 40)

    def test_unknown_key(self):
        """Test unknown keys are rejected."""
        with pytest.raises(TruncationError):
            TruncProfile.from_mapping({"zmax": 3})

    def test_from_file(self, tmp_path):
        """Test reading a JSON profile file."""
        path = tmp_path / "profile.json"
        path.write_text(json.dumps({"u_max": 20, "y_max": 30}))
        profile = TruncProfile.from_file(path)
        assert (profile.u_max, profile.y_max) == (20, 30)

    def test_from_file_not_object(self, tmp_path):
        """Test a JSON list is rejected."""
        path = tmp_path / "profile.json"
        path.write_text("[1, 2]")
        with pytest.raises(TruncationError):
            TruncProfile.from_file(path)

    def test_missing_file(self, tmp_path):
        """Test an unreadable file raises TruncationError."""
        with pytest.raises(TruncationError):
            TruncProfile.from_file(tmp_path / "absent.json")

    def test_resolution_order(self, tmp_path):
        """Test defaults < environment file < explicit overrides."""
        path = tmp_path / "profile.json"
        path.write_text(json.dumps({"z_max": 5, "t_max": 4}))
        profile = load_profile({"t_max": 6, "y_max": None}, environ={PROFILE_ENV_VAR: str(path)})
        assert (profile.z_max, profile.t_max, profile.y_max) == (5, 6, 40)

    def test_no_environment(self):
        """Test an empty environment gives the defaults."""
        assert load_profile(environ={}) == DEFAULT_PROFILE

    @pytest.mark.parametrize("overrides", [{"z_max": 0}, {"index_max": 0}])
    def test_resolved_bounds_positive(self, overrides):
        """Test a resolved profile needs at least one z-degree and one index."""
        with pytest.raises(TruncationError):
            load_profile(overrides, environ={})
