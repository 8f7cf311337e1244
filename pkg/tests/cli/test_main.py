"""
Tests for the command-line front end.
"""

import argparse
import io
import json

import pytest

from faberhurwitz.cli.main import build_parser, partition_arg, run, window_arg
from faberhurwitz.core.partitions import Partition
from faberhurwitz.series.profile import PROFILE_ENV_VAR


@pytest.fixture(autouse=True)
def no_profile_file(monkeypatch):
    monkeypatch.delenv(PROFILE_ENV_VAR, raising=False)


def _run(*argv):
    stream = io.StringIO()
    code = run(list(argv), stream)
    return code, stream.getvalue()


class TestArgumentTypes:
    """Tests for the argparse type converters."""

    def test_partition(self):
        """Test comma-separated partitions are sorted."""
        assert partition_arg("1,2") == Partition.of(2, 1)

    @pytest.mark.parametrize("text", ["0", "a", ""])
    def test_bad_partition(self, text):
        """Test non-positive, non-numeric and empty partitions are rejected."""
        with pytest.raises(argparse.ArgumentTypeError):
            partition_arg(text)

    def test_window(self):
        """Test MIN,MAX windows."""
        assert window_arg("-4,8") == (-4, 8)

    def test_subcommand_required(self):
        """Test a missing subcommand is a usage error."""
        with pytest.raises(SystemExit) as info:
            build_parser().parse_args([])
        assert info.value.code == 2


class TestHurwitz:
    """Tests for the hurwitz and double-hurwitz commands."""

    def test_single(self):
        """Test H⁰_(2,1) = 4 as compact sorted JSON."""
        code, out = _run("hurwitz", "--alpha", "2,1")
        assert code == 0
        assert out == '{"H":{"den":"1","num":"4"},"alpha":[2,1],"genus":0}\n'

    def test_oracle_agrees(self):
        """Test the monodromy count gives the same answer."""
        assert _run("hurwitz", "--alpha", "2,1", "--oracle") == _run("hurwitz", "--alpha", "2,1")

    def test_double(self):
        """Test H⁰_{(2),(1,1)} = 1."""
        code, out = _run("double-hurwitz", "--alpha", "2", "--beta", "1,1")
        assert code == 0
        assert json.loads(out)["H"] == {"num": "1", "den": "1"}

    def test_bad_alpha(self):
        """Test a zero part exits with the usage code."""
        with pytest.raises(SystemExit) as info:
            _run("hurwitz", "--alpha", "0")
        assert info.value.code == 2

    def test_deterministic(self):
        """Test repeated runs print identical output."""
        assert _run("hurwitz", "--alpha", "3,1") == _run("hurwitz", "--alpha", "3,1")


class TestFaberHurwitz:
    """Tests for the faber-hurwitz command."""

    def test_value(self):
        """Test F^1_(2) = 5 with r^Fab = 2."""
        code, out = _run("faber-hurwitz", "--genus", "1", "--alpha", "2")
        assert code == 0
        assert out == '{"F":{"den":"1","num":"5"},"rFab":2}\n'

    def test_genus_zero(self):
        """Test a computation error returns 1 without output."""
        code, out = _run("faber-hurwitz", "--genus", "0", "--alpha", "2")
        assert code == 1
        assert out == ""


class TestFaberNumbers:
    """Tests for the faber-numbers command and the profile flags."""

    def test_genus_one(self):
        """Test ⟨τ0⟩_1 = 1 is solved under a smaller z-bound."""
        code, out = _run("--z-max", "4", "faber-numbers", "--genus", "1", "--parts", "1")
        assert code == 0
        assert json.loads(out) == [
            {"key": "1;0;0", "provenance": "solved", "value": {"den": "1", "num": "1"}}
        ]

    def test_csv(self):
        """Test CSV output starts with the header."""
        code, out = _run("--z-max", "4", "faber-numbers", "--genus", "1", "--parts", "1", "--format", "csv")
        assert code == 0
        assert out.splitlines() == ["g,a_indices,k,num,den,provenance", "1,0,0,1,1,solved"]

    @pytest.mark.parametrize("flags", [
        ["--u-window=1,4"],
        ["--u-window=5,-5"],
        ["--z-max", "0"],
    ])
    def test_invalid_profile_flags(self, flags):
        """Test invalid truncation flags are usage errors."""
        with pytest.raises(SystemExit) as info:
            _run(*flags, "faber-numbers", "--genus", "1", "--parts", "1")
        assert info.value.code == 2


class TestVerify:
    """Tests for the verify command."""

    def test_one_part(self):
        """Test a passing suite returns 0 and reports its checks."""
        code, out = _run("verify", "--suite", "one-part", "--max-genus", "1")
        assert code == 0
        report = json.loads(out)
        assert report["passed"] is True
        assert report["suites"][0]["suite"] == "one-part"

    def test_unknown_suite(self):
        """Test an unknown suite name is a usage error."""
        with pytest.raises(SystemExit) as info:
            _run("verify", "--suite", "nonsense")
        assert info.value.code == 2

    def test_bad_max_genus(self):
        """Test max-genus 0 is a usage error."""
        with pytest.raises(SystemExit) as info:
            _run("verify", "--suite", "one-part", "--max-genus", "0")
        assert info.value.code == 2

    @pytest.mark.slow
    def test_all_suites(self):
        """Test every default suite passes through genus 2."""
        code, out = _run("verify", "--suite", "all", "--max-genus", "2")
        assert code == 0
        assert json.loads(out)["passed"] is True
