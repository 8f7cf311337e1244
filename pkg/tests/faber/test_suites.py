"""
Tests for the verification suites and their reports.
"""

import pytest

from faberhurwitz.core.errors import PartitionError
from faberhurwitz.core.rational import rational
from faberhurwitz.faber.suites import (
    OPTIONAL_SUITES,
    SUITES,
    Failure,
    SuiteReport,
    SuiteResult,
    check_suites,
    suite_names,
)


def _raise():
    raise PartitionError("bad partition")


class TestSuiteResult:
    """Tests for SuiteResult bookkeeping."""

    def test_zero_residual_passes(self):
        """Test a zero residual counts one passing check."""
        result = SuiteResult("demo")
        result.check("zero", lambda: rational(0))
        assert result.passed
        assert result.checks == 1

    def test_nonzero_residual(self):
        """Test a nonzero residual is reported by value."""
        result = SuiteResult("demo")
        result.check("off", lambda: rational(1, 2))
        assert not result.passed
        assert result.failures == [Failure("off", "1/2")]

    def test_mapping_counts_entries(self):
        """Test a mapping of residuals counts one check per entry."""
        result = SuiteResult("demo")
        result.check("group", lambda: {"a": 0, "b": 1})
        assert result.checks == 2
        assert [failure.check for failure in result.failures] == ["group[b]"]

    def test_package_error_recorded(self):
        """Test package errors become failures instead of propagating."""
        result = SuiteResult("demo")
        result.check("raises", _raise)
        result.holds("raises too", _raise)
        assert result.checks == 2
        assert result.failures[0].residual == "PartitionError: bad partition"

    def test_holds(self):
        """Test boolean checks."""
        result = SuiteResult("demo")
        result.holds("yes", lambda: True)
        result.holds("no", lambda: False)
        assert result.failures == [Failure("no", "does not hold")]

    def test_to_json(self):
        """Test the JSON report shape."""
        result = SuiteResult("demo")
        result.fail("broken", "message")
        assert result.to_json() == {
            "suite": "demo",
            "passed": False,
            "checks": 1,
            "failures": [{"check": "broken", "residual": "message"}],
        }

    def test_report(self):
        """Test a report passes only when every suite passes."""
        good, bad = SuiteResult("good"), SuiteResult("bad")
        bad.fail("x", "y")
        assert SuiteReport([good]).passed
        assert not SuiteReport([good, bad]).passed
        assert SuiteReport([good], ["psi-phi-3"]).to_json()["skipped"] == ["psi-phi-3"]


class TestSuiteNames:
    """Tests for suite_names."""

    def test_all_skips_optional(self):
        """Test 'all' expands to every non-optional suite."""
        selected, skipped = suite_names(["all"])
        assert skipped == list(OPTIONAL_SUITES)
        assert set(selected) | set(skipped) == set(SUITES)
        assert selected[0] == "hurwitz-oracle"

    def test_explicit_optional(self):
        """Test naming an optional suite runs it."""
        selected, skipped = suite_names(["all", "psi-phi-3"])
        assert "psi-phi-3" in selected
        assert skipped == []

    def test_duplicates(self):
        """Test repeated names run once."""
        assert suite_names(["cg-ratio", "cg-ratio"]) == (["cg-ratio"], [])

    def test_unknown(self):
        """Test unknown names raise ValueError."""
        with pytest.raises(ValueError):
            suite_names(["nonsense"])


class TestCheckSuites:
    """Tests for check_suites."""

    def test_cg_ratio(self):
        """Test the generator-ratio suite passes in genus 1."""
        report = check_suites(["cg-ratio"], max_genus=1)
        assert report.passed
        assert report.results[0].checks == 6

    def test_one_part(self):
        """Test the one-part suite passes in genus 1."""
        report = check_suites(["one-part"], max_genus=1)
        assert report.passed
        assert report.results[0].checks == 6

    def test_max_genus(self):
        """Test max_genus must be positive."""
        with pytest.raises(ValueError):
            check_suites(["one-part"], max_genus=0)

    @pytest.mark.slow
    def test_hurwitz_oracle(self):
        """Test closed genus-0 numbers against the monodromy count."""
        assert check_suites(["hurwitz-oracle"]).passed
