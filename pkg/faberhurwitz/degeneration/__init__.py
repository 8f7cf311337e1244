"""
Degeneration side: Faber–Hurwitz numbers and their generating series.

This package contains:
- The memoized join-cut recursion for F^g_α and the one-part closed formula
- The Faber–Hurwitz series F^g and its symmetrized forms Ξ_m F^g
- The residual of the join-cut equation
"""

from faberhurwitz.degeneration.joincut import FHKey, faber_hurwitz, one_part_closed
from faberhurwitz.degeneration.series import fh_series, joincut_residual, symmetrized_fh

__all__ = [
    "FHKey",
    "faber_hurwitz",
    "one_part_closed",
    "fh_series",
    "joincut_residual",
    "symmetrized_fh",
]
