"""
Exact primitives shared by every other subpackage.

This package contains:
- ExactRational helpers (sympy QQ) and their JSON form
- Partition with multiplicities, |Aut|, class sizes and enumeration
- Double factorials and branch-point counts
- SymbolLinear, affine-linear forms over Faber symbol keys (FaberKey)
- The faberhurwitz exception hierarchy
"""

from faberhurwitz.core.errors import (
    FaberHurwitzError,
    PartitionError,
    IncompatibleSeriesError,
    TruncationError,
    PolynomialityError,
    ConvergenceError,
    MissingSymbolError,
    SymbolSystemError,
    DimensionError,
    NotInImageError,
)
from faberhurwitz.core.rational import (
    ExactRational,
    rational,
    as_rational,
    rational_to_json,
    rational_from_json,
    binomial,
)
from faberhurwitz.core.partitions import (
    Partition,
    BranchCounts,
    aut_size,
    class_size,
    partitions_of,
    partitions_bounded,
    partitions_up_to,
    double_factorial_odd,
    branch_counts,
    r_single,
    r_double,
    r_fab,
)
from faberhurwitz.core.linear import FaberKey, SymbolLinear

__all__ = [
    "FaberHurwitzError",
    "PartitionError",
    "IncompatibleSeriesError",
    "TruncationError",
    "PolynomialityError",
    "ConvergenceError",
    "MissingSymbolError",
    "SymbolSystemError",
    "DimensionError",
    "NotInImageError",
    "ExactRational",
    "rational",
    "as_rational",
    "rational_to_json",
    "rational_from_json",
    "binomial",
    "Partition",
    "BranchCounts",
    "aut_size",
    "class_size",
    "partitions_of",
    "partitions_bounded",
    "partitions_up_to",
    "double_factorial_odd",
    "branch_counts",
    "r_single",
    "r_double",
    "r_fab",
    "SymbolLinear",
    "FaberKey",
]
