"""
faberhurwitz: Faber symbols from Hurwitz numbers, in exact arithmetic.

Faber's intersection numbers ⟨τ_{a_1}⋯τ_{a_n}λ_k⟩_g are recovered by
computing the Faber–Hurwitz numbers twice: once by the join-cut recursion
(degeneration) and once as a sum over localization trees whose weights are
linear in the unknown symbols. Matching the two gives an exact linear system.

Core concepts:
- Partition, ExactRational, FaberKey: the exact primitives
- MultiSeries, RationalFunctionSeries: truncated series with exact coefficients
- faber_hurwitz: the join-cut numbers F^g_α
- predicted_fh: the same numbers as linear forms in the Faber symbols
- solve_symbols: the recovered symbols, checked against the conjectured values
- check_suites: the identity suites behind `faberhurwitz verify`
"""

from faberhurwitz.core import FaberHurwitzError, FaberKey, Partition, rational
from faberhurwitz.degeneration import faber_hurwitz, one_part_closed
from faberhurwitz.faber import SymbolTable, check_suites, conjecture_value, solve_symbols
from faberhurwitz.hurwitz import HurwitzQuery, hurwitz_number
from faberhurwitz.localization import predicted_fh
from faberhurwitz.series import DEFAULT_PROFILE, MultiSeries, RationalFunctionSeries, TruncProfile

__version__ = "0.1.0"

__all__ = [
    "FaberHurwitzError",
    "FaberKey",
    "Partition",
    "rational",
    "faber_hurwitz",
    "one_part_closed",
    "SymbolTable",
    "check_suites",
    "conjecture_value",
    "solve_symbols",
    "HurwitzQuery",
    "hurwitz_number",
    "predicted_fh",
    "DEFAULT_PROFILE",
    "MultiSeries",
    "RationalFunctionSeries",
    "TruncProfile",
]
