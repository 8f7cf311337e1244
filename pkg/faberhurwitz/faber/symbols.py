"""
Faber symbols and tables of their values.

A Faber symbol ⟨τ_{a_1}⋯τ_{a_n}λ_k⟩_g is a rational number measured in units
of ψ₁^{g−1}. Symbols with an index 0 or 1 (and n ≥ 2) reduce to symbols with
one point fewer:

    string:   ⟨τ_0 Π τ_{a_i} λ_k⟩_g = Σ_i ⟨⋯τ_{a_i−1}⋯ λ_k⟩_g
    dilaton:  ⟨τ_1 Π τ_{a_i} λ_k⟩_g = (2g − 2 + n)·⟨Π τ_{a_i} λ_k⟩_g

with n the number of remaining points. The irreducible symbols (one point,
or every index ≥ 2) are the unknowns recovered from Faber–Hurwitz numbers.

Example:
    >>> from faberhurwitz.faber.symbols import conjecture_value
    >>> conjecture_value(2, [1, 1, 1])
    12
"""

import csv
import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, TextIO, Tuple, Union

from faberhurwitz.core.errors import DimensionError, MissingSymbolError, PartitionError
from faberhurwitz.core.linear import FaberKey, SymbolLinear
from faberhurwitz.core.partitions import double_factorial_odd
from faberhurwitz.core.rational import ExactRational, RationalLike, as_rational, rational, rational_str, rational_to_json
from faberhurwitz.localization.trees import faber_polynomial_form
from faberhurwitz.localization.treeseries import faber_keys

logger = logging.getLogger(__name__)

CSV_HEADER = ("g", "a_indices", "k", "num", "den", "provenance")


class Provenance(Enum):
    """Where a table entry came from."""
    SOLVED = "solved"
    STRING_DILATON = "string-dilaton"
    CONJECTURED = "conjectured"


@dataclass(frozen=True)
class SymbolEntry:
    value: ExactRational
    provenance: Provenance


# -- reductions -------------------------------------------------------------

def is_unknown(key: FaberKey) -> bool:
    """True for irreducible symbols: one point, or every index at least 2."""
    return not key.is_reducible()


def reduction_step(key: FaberKey) -> SymbolLinear:
    """
    One application of string (preferred) or dilaton.

    Terms whose indices would go negative vanish.

    Raises:
        DimensionError: If the key is irreducible
    """
    if not key.is_reducible():
        raise DimensionError(f"{key} admits neither string nor dilaton")
    indices = list(key.indices)
    if indices[-1] == 0:
        rest = indices[:-1]
        terms: Dict[FaberKey, ExactRational] = {}
        for i, a in enumerate(rest):
            if a == 0:
                continue
            lowered = FaberKey(key.genus, tuple(rest[:i] + [a - 1] + rest[i + 1:]), key.k)
            terms[lowered] = terms.get(lowered, rational(0)) + 1
        return SymbolLinear(terms)
    rest = indices[:-1]
    return SymbolLinear.symbol(FaberKey(key.genus, tuple(rest), key.k), 2 * key.genus - 2 + len(rest))


@lru_cache(maxsize=None)
def reduce_to_unknowns(key: FaberKey) -> SymbolLinear:
    """Rewrite a symbol as a linear form in irreducible symbols."""
    if is_unknown(key):
        return SymbolLinear.symbol(key)
    return reduction_step(key).substitute(reduce_to_unknowns)


def reduce_form(form: SymbolLinear) -> SymbolLinear:
    """Rewrite every symbol of a linear form in irreducible symbols."""
    return form.substitute(reduce_to_unknowns)


def string_dilaton(key: FaberKey, table: "SymbolTable") -> Optional[ExactRational]:
    """
    Value of a reducible symbol from the table, or None while inputs are missing.

    Raises:
        DimensionError: If the key is irreducible
    """
    step = reduction_step(key)
    try:
        return table.evaluate(step)
    except MissingSymbolError:
        return None


# -- the table --------------------------------------------------------------

class SymbolTable:
    """
    Map FaberKey -> value with a provenance tag per entry.

    Lookups through value() fall back on string and dilaton, so a table
    holding only irreducible symbols answers for every symbol of its genera.
    """

    def __init__(self, entries: Optional[Mapping[FaberKey, SymbolEntry]] = None):
        self._entries: Dict[FaberKey, SymbolEntry] = dict(entries or {})

    def set(self, key: FaberKey, value: RationalLike, provenance: Provenance = Provenance.SOLVED):
        self._entries[key] = SymbolEntry(as_rational(value), provenance)

    def __contains__(self, key: FaberKey) -> bool:
        return key in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def keys(self) -> List[FaberKey]:
        return sorted(self._entries, key=FaberKey.sort_key)

    def items(self) -> Iterator[Tuple[FaberKey, SymbolEntry]]:
        for key in self.keys():
            yield key, self._entries[key]

    def entry(self, key: FaberKey) -> SymbolEntry:
        try:
            return self._entries[key]
        except KeyError:
            raise MissingSymbolError(f"no entry for {key.label()}") from None

    def value(self, key: FaberKey) -> ExactRational:
        """
        Stored value, else the value obtained by string/dilaton.

        Raises:
            MissingSymbolError: If neither the table nor a reduction supplies it
        """
        entry = self._entries.get(key)
        if entry is not None:
            return entry.value
        if is_unknown(key):
            raise MissingSymbolError(f"no value for {key.label()}")
        return reduction_step(key).evaluate(self.value)

    def evaluate(self, form: SymbolLinear) -> ExactRational:
        return form.evaluate(self.value)

    def complete(self, keys: Iterable[FaberKey]):
        """Add string/dilaton entries for every listed reducible key that resolves."""
        for key in keys:
            if key in self._entries or is_unknown(key):
                continue
            value = string_dilaton(key, self)
            if value is not None:
                self.set(key, value, Provenance.STRING_DILATON)

    def genera(self) -> List[int]:
        return sorted({key.genus for key in self._entries})

    # -- serialization ----------------------------------------------------

    def to_json(self) -> List[Dict]:
        return [
            {"key": key.label(), "value": rational_to_json(entry.value), "provenance": entry.provenance.value}
            for key, entry in self.items()
        ]

    def write_csv(self, stream: TextIO):
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for key, entry in self.items():
            value = rational_to_json(entry.value)
            writer.writerow([
                key.genus,
                " ".join(str(a) for a in key.indices),
                key.k,
                value["num"],
                value["den"],
                entry.provenance.value,
            ])

    def to_csv(self, path: Union[str, Path]):
        with open(path, "w", newline="") as stream:
            self.write_csv(stream)

    @classmethod
    def read_csv(cls, stream: TextIO) -> "SymbolTable":
        """
        Parse the CSV form written by write_csv.

        Raises:
            DimensionError: On a malformed row or an invalid key
        """
        table = cls()
        reader = csv.DictReader(stream)
        if tuple(reader.fieldnames or ()) != CSV_HEADER:
            raise DimensionError(f"unexpected symbol table header {reader.fieldnames}")
        for row in reader:
            try:
                key = FaberKey(int(row["g"]), tuple(int(a) for a in row["a_indices"].split()), int(row["k"]))
                value = rational(int(row["num"]), int(row["den"]))
                provenance = Provenance(row["provenance"])
            except (TypeError, ValueError) as exc:
                if isinstance(exc, DimensionError):
                    raise
                raise DimensionError(f"malformed symbol table row {row}") from exc
            table.set(key, value, provenance)
        return table

    @classmethod
    def from_csv(cls, path: Union[str, Path]) -> "SymbolTable":
        with open(path, newline="") as stream:
            return cls.read_csv(stream)

    def __repr__(self) -> str:
        shown = ", ".join(f"{key}={rational_str(entry.value)}" for key, entry in list(self.items())[:6])
        return f"SymbolTable({shown}{', ...' if len(self) > 6 else ''})"


# -- closed forms -----------------------------------------------------------

def conjecture_value(g: int, d: Sequence[int]) -> ExactRational:
    """
    (2g−3+n)!·(2g−1)!!/((2g−1)!·Π(2d_j−1)!!) for positive d_j with Σd_j = g − 2 + n.

    Raises:
        DimensionError: If some d_j < 1 or the dimension constraint fails
    """
    d = list(d)
    n = len(d)
    if g < 1 or n < 1 or any(x < 1 for x in d) or sum(d) != g - 2 + n:
        raise DimensionError(f"no conjectured value for g={g}, d={d}")
    numerator = math.factorial(2 * g - 3 + n) * double_factorial_odd(2 * g - 1)
    denominator = math.factorial(2 * g - 1)
    for x in d:
        denominator *= double_factorial_odd(2 * x - 1)
    return rational(numerator, denominator)


def conjecture_table(g: int, n_max: int) -> SymbolTable:
    """Top symbols of genus g with at most n_max points, filled from conjecture_value."""
    table = SymbolTable()
    for n in range(1, n_max + 1):
        for key in faber_keys(g, n):
            if key.is_top():
                table.set(key, conjecture_value(g, key.indices), Provenance.CONJECTURED)
    return table


def faber_polynomial(g: int, m: int, arguments: Sequence[int], table: SymbolTable) -> ExactRational:
    """
    𝒫^g_m(α) = Σ (−1)^k ⟨τ_{a_1}⋯τ_{a_m}λ_k⟩ α_1^{a_1}⋯α_m^{a_m}, in ψ₁^{g−1} units.

    Raises:
        PartitionError: If the argument count is not m or an argument is < 1
        MissingSymbolError: If the table lacks a needed symbol
    """
    arguments = list(arguments)
    if len(arguments) != m or any(x < 1 for x in arguments):
        raise PartitionError(f"faber_polynomial needs {m} positive arguments, got {arguments}")
    return table.evaluate(faber_polynomial_form(g, arguments))


def generator_ratio(g: int) -> ExactRational:
    """𝔾_{g,1}/ψ₁^{g−1} = 2^g/(g−1)!."""
    if g < 1:
        raise DimensionError(f"generator_ratio needs g >= 1, got {g}")
    return rational(2 ** g, math.factorial(g - 1))


def hyperelliptic_coefficient(g: int) -> ExactRational:
    """(2^{2g} − 1)·2^{g−1}/(g!·(2g+1)·(2g+2))."""
    if g < 1:
        raise DimensionError(f"hyperelliptic_coefficient needs g >= 1, got {g}")
    return rational((2 ** (2 * g) - 1) * 2 ** (g - 1), math.factorial(g) * (2 * g + 1) * (2 * g + 2))


def lambda_relation_residual(table: SymbolTable, g: int) -> ExactRational:
    """
    Σ_{i=0}^{g−2} (−1)^i ⟨τ_{g−1−i}λ_i⟩_g − 2^{g−1}/g!, zero on a correct table (g ≥ 2).

    Raises:
        DimensionError: If g < 2
        MissingSymbolError: If a one-point symbol is missing
    """
    if g < 2:
        raise DimensionError(f"the lambda relation needs g >= 2, got {g}")
    total = rational(0)
    for i in range(g - 1):
        value = table.value(FaberKey(g, (g - 1 - i,), i))
        total += -value if i % 2 else value
    return total - rational(2 ** (g - 1), math.factorial(g))
