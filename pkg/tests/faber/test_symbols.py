"""
Tests for Faber symbols, reductions and symbol tables.
"""

import io

import pytest
from sympy import QQ

from faberhurwitz.core.errors import DimensionError, MissingSymbolError, PartitionError
from faberhurwitz.core.linear import FaberKey, SymbolLinear
from faberhurwitz.faber.symbols import (
    CSV_HEADER,
    Provenance,
    SymbolTable,
    conjecture_table,
    conjecture_value,
    faber_polynomial,
    generator_ratio,
    hyperelliptic_coefficient,
    lambda_relation_residual,
    reduce_to_unknowns,
    reduction_step,
)

TAU1 = FaberKey(2, (1,), 0)
TAU0_LAMBDA1 = FaberKey(2, (0,), 1)


@pytest.fixture
def genus_two_table():
    table = SymbolTable()
    table.set(TAU1, 1)
    table.set(TAU0_LAMBDA1, QQ(1, 2))
    return table


class TestReductions:
    """Tests for string and dilaton."""

    def test_dilaton(self):
        """Test ⟨τ1τ1⟩_2 = 3⟨τ1⟩_2."""
        assert reduction_step(FaberKey(2, (1, 1))) == SymbolLinear({TAU1: 3})

    def test_string(self):
        """Test string lowers each nonzero index once."""
        step = reduction_step(FaberKey(2, (2, 1, 0)))
        assert step == SymbolLinear({FaberKey(2, (1, 1)): 1, FaberKey(2, (2, 0)): 1})

    def test_full_reduction(self):
        """Test ⟨τ2τ1τ0⟩_2 = 4⟨τ1⟩_2."""
        assert reduce_to_unknowns(FaberKey(2, (2, 1, 0))) == SymbolLinear({TAU1: 4})

    def test_string_kills_lambda_term(self):
        """Test ⟨τ0τ0λ1⟩_1 vanishes."""
        assert reduction_step(FaberKey(1, (0, 0), 1)).is_zero()

    def test_irreducible(self):
        """Test irreducible keys admit no reduction."""
        with pytest.raises(DimensionError):
            reduction_step(TAU1)


class TestSymbolTable:
    """Tests for SymbolTable."""

    def test_fallback(self, genus_two_table):
        """Test reducible symbols are answered by string and dilaton."""
        assert genus_two_table.value(FaberKey(2, (1, 1))) == 3
        assert FaberKey(2, (1, 1)) not in genus_two_table

    def test_missing(self):
        """Test a missing irreducible symbol raises."""
        with pytest.raises(MissingSymbolError):
            SymbolTable().value(TAU1)

    def test_complete(self, genus_two_table):
        """Test complete stores reducible keys with their provenance."""
        genus_two_table.complete([FaberKey(2, (1, 1)), FaberKey(2, (2, 1, 0))])
        assert genus_two_table.entry(FaberKey(2, (2, 1, 0))).value == 4
        assert genus_two_table.entry(FaberKey(2, (1, 1))).provenance is Provenance.STRING_DILATON

    def test_csv_round_trip(self, genus_two_table):
        """Test write_csv and read_csv agree."""
        stream = io.StringIO()
        genus_two_table.write_csv(stream)
        assert stream.getvalue().splitlines()[0] == ",".join(CSV_HEADER)
        stream.seek(0)
        assert SymbolTable.read_csv(stream).to_json() == genus_two_table.to_json()

    def test_csv_bad_header(self):
        """Test an unexpected header is rejected."""
        with pytest.raises(DimensionError):
            SymbolTable.read_csv(io.StringIO("g,a,k\n2,1,0\n"))

    def test_csv_bad_row(self):
        """Test a malformed row is rejected."""
        text = ",".join(CSV_HEADER) + "\n2,x,0,1,1,solved\n"
        with pytest.raises(DimensionError):
            SymbolTable.read_csv(io.StringIO(text))

    def test_to_json(self, genus_two_table):
        """Test JSON rows carry labels, values and provenance."""
        assert genus_two_table.to_json()[0] == {
            "key": "2;1;0",
            "value": {"num": "1", "den": "1"},
            "provenance": "solved",
        }


class TestClosedForms:
    """Tests for the conjectured values and constants."""

    @pytest.mark.parametrize("g,d,expected", [
        (2, [1], 1),
        (2, [1, 1], 3),
        (2, [1, 1, 1], 12),
        (3, [2], 1),
        (3, [2, 1], 5),
    ])
    def test_conjecture_value(self, g, d, expected):
        """Test the conjectured top symbols."""
        assert conjecture_value(g, d) == expected

    @pytest.mark.parametrize("d", [[0, 2], [2]])
    def test_conjecture_domain(self, d):
        """Test zero indices and the dimension constraint."""
        with pytest.raises(DimensionError):
            conjecture_value(2, d)

    def test_conjecture_table(self):
        """Test the table holds only top symbols."""
        table = conjecture_table(2, 2)
        assert table.keys() == [TAU1, FaberKey(2, (1, 1))]
        assert table.entry(TAU1).provenance is Provenance.CONJECTURED

    @pytest.mark.parametrize("g,expected", [(1, 2), (2, 4), (3, 4)])
    def test_generator_ratio(self, g, expected):
        """Test 2^g/(g−1)!."""
        assert generator_ratio(g) == expected

    @pytest.mark.parametrize("g,expected", [(1, QQ(1, 4)), (2, QQ(1, 2))])
    def test_hyperelliptic_coefficient(self, g, expected):
        """Test the hyperelliptic coefficient."""
        assert hyperelliptic_coefficient(g) == expected

    def test_lambda_relation(self, genus_two_table):
        """Test ⟨τ1⟩_2 = 1 satisfies the genus-2 relation."""
        assert lambda_relation_residual(genus_two_table, 2) == 0

    def test_lambda_relation_genus_one(self, genus_two_table):
        """Test the relation needs g >= 2."""
        with pytest.raises(DimensionError):
            lambda_relation_residual(genus_two_table, 1)


class TestFaberPolynomial:
    """Tests for faber_polynomial."""

    def test_one_point(self, genus_two_table):
        """Test 𝒫^2_1(5) = 5⟨τ1⟩ − ⟨τ0λ1⟩."""
        assert faber_polynomial(2, 1, [5], genus_two_table) == QQ(9, 2)

    @pytest.mark.parametrize("arguments", [[1, 2], [0]])
    def test_bad_arguments(self, arguments, genus_two_table):
        """Test argument count and positivity."""
        with pytest.raises(PartitionError):
            faber_polynomial(2, 1, arguments, genus_two_table)
