"""
Tests for assembling and solving the Faber symbol systems.
"""

import pytest
from sympy import QQ

from faberhurwitz.core.errors import PartitionError, SymbolSystemError, TruncationError
from faberhurwitz.core.linear import FaberKey
from faberhurwitz.core.partitions import Partition
from faberhurwitz.core.rational import rational
from faberhurwitz.faber.solve import (
    SymbolSystem,
    assemble_system,
    block_entry,
    conjecture_comparison,
    nonsing_block,
    solve_symbols,
    solve_system,
)
from faberhurwitz.faber.symbols import Provenance
from faberhurwitz.series.profile import TruncProfile

SMALL = TruncProfile(z_max=4, index_max=4, u_max=8)
A = FaberKey(2, (1,), 0)
B = FaberKey(2, (0,), 1)


def _system(rows, rhs):
    return SymbolSystem(
        2,
        (A, B)[:len(rows[0])],
        tuple(Partition.of(i + 1) for i in range(len(rows))),
        tuple(tuple(rational(x) for x in row) for row in rows),
        tuple(rational(x) for x in rhs),
    )


class TestSolveSystem:
    """Tests for solve_system on hand-made systems."""

    def test_unique(self):
        """Test a determined system is solved exactly."""
        values = solve_system(_system([[1, 0], [1, 2]], [3, 4]))
        assert values == {A: 3, B: QQ(1, 2)}

    def test_inconsistent(self):
        """Test an inconsistent system raises."""
        with pytest.raises(SymbolSystemError):
            solve_system(_system([[1], [1]], [1, 2]))

    def test_free(self):
        """Test a rank-deficient system names its free unknowns."""
        with pytest.raises(SymbolSystemError) as info:
            solve_system(_system([[1, 1]], [2]))
        assert B in info.value.free

    def test_allow_free(self):
        """Test allow_free returns only the determined unknowns."""
        values = solve_system(_system([[1, 0], [0, 0]], [5, 0]), allow_free=True)
        assert values == {A: 5}


class TestNonsingBlock:
    """Tests for the triangular top block."""

    @pytest.mark.parametrize("g", [1, 2, 3, 4])
    @pytest.mark.parametrize("n", [2, 3])
    def test_triangular(self, g, n):
        """Test the block is lower triangular with nonzero diagonal."""
        block = nonsing_block(g, n)
        assert block.is_triangular()
        assert block.rank() == len(block.columns)

    def test_entry(self):
        """Test one block entry by hand."""
        assert block_entry(2, (3, 6), (1, 1)) == QQ(10, 3)

    def test_invalid(self):
        """Test g and n must be positive."""
        with pytest.raises(PartitionError):
            nonsing_block(0, 2)


class TestSolveSymbols:
    """Tests for solve_symbols."""

    def test_genus_two(self):
        """Test ⟨τ1⟩_2 = 1 and the completed two-point entries."""
        table = solve_symbols(2, 2, SMALL)
        assert table.value(A) == 1
        assert table.entry(A).provenance is Provenance.SOLVED
        assert table.entry(FaberKey(2, (1, 1))).value == 3
        assert table.entry(FaberKey(2, (1, 1))).provenance is Provenance.STRING_DILATON

    def test_conjecture_comparison(self):
        """Test the solved top symbols match the conjecture."""
        rows = conjecture_comparison(solve_symbols(2, 2, SMALL), 2, 2)
        assert [row["key"] for row in rows] == ["2;1;0", "2;1,1;0"]
        assert all(row["match"] for row in rows)

    def test_genus_one(self):
        """Test ⟨τ0⟩_1 = 1."""
        assert solve_symbols(1, 1, SMALL).value(FaberKey(1, (0,), 0)) == 1

    @pytest.mark.parametrize("g,n_max", [(0, 1), (1, 0), (1, 4)])
    def test_domain(self, g, n_max):
        """Test genus and point-count ranges."""
        with pytest.raises(PartitionError):
            assemble_system(g, n_max, SMALL)

    def test_window_too_small(self):
        """Test a profile that cannot reach the genus."""
        with pytest.raises(TruncationError):
            solve_symbols(4, 1, SMALL)
