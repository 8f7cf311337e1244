"""
Recovering Faber symbols from Faber–Hurwitz numbers.

predicted_fh writes every F^g_α as a linear form in the Faber symbols of
genus g. Reducing those forms to irreducible symbols and equating them with
the join-cut values gives an exact linear system. The system is solved by
fraction-free row reduction over QQ; every irreducible symbol with at most
n_max points must come out determined.

Uniqueness is certified separately by nonsing_block: the top symbols with n
points map to a lower-triangular block of the symmetrized system when rows
and columns are ordered by the n − 1 smallest indices.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from faberhurwitz.core.errors import PartitionError, SymbolSystemError
from faberhurwitz.core.linear import FaberKey, SymbolLinear
from faberhurwitz.core.partitions import Partition, distinct_orderings, double_factorial_odd
from faberhurwitz.core.rational import ExactRational, binomial, rational, rational_to_json
from faberhurwitz.degeneration.joincut import faber_hurwitz
from faberhurwitz.faber.symbols import Provenance, SymbolTable, conjecture_value, is_unknown, reduce_form
from faberhurwitz.localization.treeseries import faber_keys, predicted_fh
from faberhurwitz.series.profile import DEFAULT_PROFILE, TruncProfile

logger = logging.getLogger(__name__)

MAX_SOLVE_POINTS = 3


@dataclass(frozen=True)
class SymbolSystem:
    """The assembled equations: rows[i]·unknowns = rhs[i] for partitions[i]."""
    genus: int
    unknowns: Tuple[FaberKey, ...]
    partitions: Tuple[Partition, ...]
    rows: Tuple[Tuple[ExactRational, ...], ...]
    rhs: Tuple[ExactRational, ...]

    def augmented(self) -> DomainMatrix:
        width = len(self.unknowns) + 1
        entries = [list(row) + [value] for row, value in zip(self.rows, self.rhs)]
        return DomainMatrix(entries, (len(entries), width), QQ)


def assemble_system(g: int, n_max: int, profile: TruncProfile = DEFAULT_PROFILE) -> SymbolSystem:
    """
    One equation per α with |α| ≤ z_max and l(α) ≤ n_max.

    Raises:
        PartitionError: If g < 1 or n_max is outside 1..3
        TruncationError: If the profile's u-window is too small for genus g
    """
    if g < 1:
        raise PartitionError(f"solving symbols needs genus >= 1, got {g}")
    if not 1 <= n_max <= MAX_SOLVE_POINTS:
        raise PartitionError(f"n_max must lie in 1..{MAX_SOLVE_POINTS}, got {n_max}")
    forms: Dict[Partition, SymbolLinear] = {
        alpha: reduce_form(form) for alpha, form in predicted_fh(g, profile, n_max).items()
    }
    unknowns = sorted({key for form in forms.values() for key in form.keys()}, key=FaberKey.sort_key)
    partitions = sorted(forms, key=Partition.sort_key)
    rows, rhs = [], []
    for alpha in partitions:
        form = forms[alpha]
        rows.append(tuple(form.coefficient(key) for key in unknowns))
        rhs.append(faber_hurwitz(g, alpha) - form.constant)
    logger.debug("genus %d: %d equations in %d unknowns", g, len(rows), len(unknowns))
    return SymbolSystem(g, tuple(unknowns), tuple(partitions), tuple(rows), tuple(rhs))


def solve_system(system: SymbolSystem, allow_free: bool = False) -> Dict[FaberKey, ExactRational]:
    """
    Exact solution of an assembled system.

    Args:
        system: Equations from assemble_system
        allow_free: Return the determined unknowns instead of raising when
            some are left free

    Raises:
        SymbolSystemError: If the system is inconsistent, or rank deficient
            while allow_free is False
    """
    width = len(system.unknowns)
    if not system.rows:
        if width:
            raise SymbolSystemError(f"no equations for genus {system.genus}", free=system.unknowns)
        return {}
    reduced, pivots = system.augmented().rref(method="FF")
    if width in pivots:
        raise SymbolSystemError(f"the genus-{system.genus} system is inconsistent")
    entries = reduced.to_list()
    free = [key for col, key in enumerate(system.unknowns) if col not in pivots]
    if free:
        labels = ", ".join(key.label() for key in free)
        if not allow_free:
            raise SymbolSystemError(f"genus-{system.genus} system leaves {labels} undetermined", free=free)
        logger.warning("genus-%d system leaves %s undetermined", system.genus, labels)
    values: Dict[FaberKey, ExactRational] = {}
    for row, col in enumerate(pivots):
        if any(entries[row][other] for other in range(width) if other != col):
            continue
        values[system.unknowns[col]] = entries[row][width] / entries[row][col]
    return values


def solve_symbols(
    g: int,
    n_max: int,
    profile: TruncProfile = DEFAULT_PROFILE,
    allow_free: bool = False,
) -> SymbolTable:
    """
    Every Faber symbol of genus g with at most n_max points.

    Irreducible symbols are tagged solved; the remaining keys are filled by
    string and dilaton.

    Raises:
        PartitionError: If g < 1 or n_max is outside 1..3
        SymbolSystemError: On inconsistency, rank deficiency, or a failed
            triangular-block check
        TruncationError: If the profile cannot reach genus g
    """
    system = assemble_system(g, n_max, profile)
    for n in range(2, n_max + 1):
        if not nonsing_block(g, n).is_triangular():
            raise SymbolSystemError(f"the {n}-point top block of genus {g} is not triangular")
    values = solve_system(system, allow_free=allow_free)
    table = SymbolTable()
    for key, value in values.items():
        table.set(key, value, Provenance.SOLVED)
        logger.debug("solved %s = %s", key, value)
    missing = [
        key for n in range(1, n_max + 1) for key in faber_keys(g, n)
        if is_unknown(key) and key not in table
    ]
    if missing and not allow_free:
        raise SymbolSystemError(
            f"genus-{g} equations do not reach {', '.join(key.label() for key in missing)}", free=missing
        )
    table.complete(key for n in range(2, n_max + 1) for key in faber_keys(g, n))
    logger.info("genus %d: solved %d symbols with at most %d points", g, len(table), n_max)
    return table


def solve_tables(g_max: int, n_max: int, profile: TruncProfile = DEFAULT_PROFILE) -> SymbolTable:
    """solve_symbols for every genus 1..g_max, merged into one table."""
    merged = SymbolTable()
    for g in range(1, g_max + 1):
        for key, entry in solve_symbols(g, n_max, profile).items():
            merged.set(key, entry.value, entry.provenance)
    return merged


# -- the triangular top block ----------------------------------------------

@dataclass(frozen=True)
class TopBlock:
    """
    Square block of the symmetrized system on the n-point top symbols.

    columns[c] is a top key, rows[r] the exponent vector i of the row attached
    to columns[r]; matrix[r][c] is that key's coefficient in row i.
    """
    genus: int
    columns: Tuple[FaberKey, ...]
    rows: Tuple[Tuple[int, ...], ...]
    matrix: Tuple[Tuple[ExactRational, ...], ...]

    def is_triangular(self) -> bool:
        """Lower triangular with a nonzero diagonal."""
        size = len(self.columns)
        for r in range(size):
            if not self.matrix[r][r]:
                return False
            if any(self.matrix[r][c] for c in range(r + 1, size)):
                return False
        return True

    def rank(self) -> int:
        if not self.columns:
            return 0
        size = len(self.columns)
        return DomainMatrix([list(row) for row in self.matrix], (size, size), QQ).rank()


def _row_for(g: int, key: FaberKey) -> Tuple[int, ...]:
    smallest = sorted(key.indices)[:-1]
    head = [2 * a + 1 for a in smallest]
    return tuple(head + [4 * g - 5 + 3 * key.n - sum(head)])


def block_entry(g: int, row: Sequence[int], indices: Sequence[int]) -> ExactRational:
    """
    Σ over distinct orderings a of the indices of Π_j (2a_j−1)!!·C(i_j−1, m_j)/(2g−1)!!,
    m_j = i_j − 2a_j − 1, with terms for negative m_j dropped.
    """
    total = 0
    for ordering in distinct_orderings(indices):
        term = 1
        for i, a in zip(row, ordering):
            m = i - 2 * a - 1
            if m < 0:
                term = 0
                break
            term *= double_factorial_odd(2 * a - 1) * binomial(2 * a + m, m)
        total += term
    return rational(total, double_factorial_odd(2 * g - 1))


def nonsing_block(g: int, n: int) -> TopBlock:
    """
    The n-point top block of genus g, ordered by the n − 1 smallest indices.

    Raises:
        PartitionError: If g < 1 or n < 1
    """
    if g < 1 or n < 1:
        raise PartitionError(f"nonsing_block needs g, n >= 1, got g={g}, n={n}")
    columns = sorted(
        (key for key in faber_keys(g, n) if key.is_top()),
        key=lambda key: tuple(sorted(key.indices)[:-1]),
    )
    rows = tuple(_row_for(g, key) for key in columns)
    matrix = tuple(tuple(block_entry(g, row, key.indices) for key in columns) for row in rows)
    return TopBlock(g, tuple(columns), rows, matrix)


def conjecture_comparison(table: SymbolTable, g: int, n_max: int) -> List[Dict]:
    """Rows {key, solved, conjectured, match} for the top symbols of the table."""
    rows = []
    for n in range(1, n_max + 1):
        for key in faber_keys(g, n):
            if not key.is_top():
                continue
            solved = table.value(key)
            conjectured = conjecture_value(g, key.indices)
            rows.append({
                "key": key.label(),
                "solved": rational_to_json(solved),
                "conjectured": rational_to_json(conjectured),
                "match": solved == conjectured,
            })
    return rows

