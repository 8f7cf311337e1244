"""
Genus-0 (and small-genus) single and double Hurwitz numbers.

This package contains:
- Closed formulas for H⁰_α and one-part double numbers
- The class-algebra monodromy oracle with connected/disconnected conversion
- The single and double generating series Ĥ⁰ and H⁰
"""

from faberhurwitz.hurwitz.closed import HurwitzQuery, double_one_part_closed, single_closed
from faberhurwitz.hurwitz.monodromy import (
    class_vector,
    connected_hurwitz,
    monodromy_disconnected,
    transposition_action,
)
from faberhurwitz.hurwitz.series import (
    double_genus_zero,
    hurwitz_number,
    hurwitz_series_double,
    hurwitz_series_single,
)

__all__ = [
    "HurwitzQuery",
    "double_one_part_closed",
    "single_closed",
    "class_vector",
    "connected_hurwitz",
    "monodromy_disconnected",
    "transposition_action",
    "double_genus_zero",
    "hurwitz_number",
    "hurwitz_series_double",
    "hurwitz_series_single",
]
