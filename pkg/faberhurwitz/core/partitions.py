"""
Integer partitions and the counting primitives built on them.

Partitions index every Hurwitz and Faber quantity in the package: ramification
profiles α and β of branched covers, vertex data of localization trees, and the
exponent patterns p_α of generating series.

Key Concepts:
    - Partition: weakly decreasing tuple of positive parts; size |α|, length l(α)
    - Multiplicities: i_j = number of parts equal to j
    - |Aut α| = Π_j i_j!
    - Branch counts: r^g_α, r^g_{α,β}, r^Fab_{g,α}

Example:
    >>> from faberhurwitz.core.partitions import Partition, partitions_of
    >>> alpha = Partition.of(2, 2, 1)
    >>> alpha.size, alpha.length, alpha.aut_size()
    (5, 3, 2)
    >>> [str(p) for p in partitions_of(4)]
    ['(4)', '(3,1)', '(2,2)', '(2,1,1)', '(1,1,1,1)']
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Tuple

from sympy.utilities.iterables import partitions as sympy_partitions

from faberhurwitz.core.errors import PartitionError


@dataclass(frozen=True, order=False)
class Partition:
    """
    Weakly decreasing tuple of positive integers.

    Attributes:
        parts: The parts, sorted weakly decreasing on construction
    """
    parts: Tuple[int, ...] = ()
    _multiplicities: Dict[int, int] = field(
        default=None, init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise PartitionError(f"partition parts must be positive: {parts}")
        parts = tuple(sorted(parts, reverse=True))
        object.__setattr__(self, "parts", parts)
        counts: Dict[int, int] = {}
        for p in parts:
            counts[p] = counts.get(p, 0) + 1
        object.__setattr__(self, "_multiplicities", counts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        """Build a partition from its parts in any order."""
        return cls(tuple(parts))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """
        Parse a comma-separated list such as "2,1" (empty string is ∅).

        Raises:
            PartitionError: If a part is not a positive integer
        """
        text = text.strip().strip("()[]")
        if not text:
            return cls(())
        try:
            parts = tuple(int(piece) for piece in text.split(","))
        except ValueError as exc:
            raise PartitionError(f"invalid partition: {text!r}") from exc
        return cls(parts)

    @property
    def size(self) -> int:
        """|α| = Σ parts."""
        return sum(self.parts)

    @property
    def length(self) -> int:
        """l(α) = number of parts."""
        return len(self.parts)

    @property
    def multiplicities(self) -> Dict[int, int]:
        """Map j -> i_j, the number of parts equal to j."""
        return dict(self._multiplicities)

    def multiplicity(self, j: int) -> int:
        return self._multiplicities.get(j, 0)

    def aut_size(self) -> int:
        """|Aut α| = Π_j (i_j)!."""
        return aut_size(self)

    def is_empty(self) -> bool:
        return not self.parts

    def add_part(self, part: int) -> "Partition":
        return Partition(self.parts + (part,))

    def remove_part(self, part: int) -> "Partition":
        """
        Remove one occurrence of a part.

        Raises:
            PartitionError: If the part does not occur
        """
        parts = list(self.parts)
        try:
            parts.remove(part)
        except ValueError:
            raise PartitionError(f"part {part} not in {self}")
        return Partition(tuple(parts))

    def merge(self, first: int, second: int) -> "Partition":
        """Replace one occurrence each of two parts by their sum."""
        return self.remove_part(first).remove_part(second).add_part(first + second)

    def union(self, other: "Partition") -> "Partition":
        return Partition(self.parts + other.parts)

    def to_list(self) -> List[int]:
        return list(self.parts)

    def sort_key(self) -> Tuple:
        """Deterministic ordering: by size, then reverse-lexicographic."""
        return (self.size, tuple(-p for p in self.parts))

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __lt__(self, other: "Partition") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


class BranchCounts(NamedTuple):
    """The three branch-point counts of a (g, α[, β]) configuration."""
    r_single: int
    r_double: Optional[int]
    r_fab: int


def aut_size(p: Partition) -> int:
    """
    Size of the automorphism group of a partition, Π_j (i_j)!.

    Example:
        >>> aut_size(Partition.of(1, 1, 1, 1))
        24
    """
    result = 1
    for count in p.multiplicities.values():
        result *= math.factorial(count)
    return result


def class_size(p: Partition) -> int:
    """Number of permutations of cycle type p: n!/Π_j (j^{i_j} i_j!)."""
    denom = 1
    for j, count in p.multiplicities.items():
        denom *= j ** count * math.factorial(count)
    return math.factorial(p.size) // denom


@lru_cache(maxsize=None)
def _partitions(n: int) -> Tuple[Tuple[int, ...], ...]:
    # sympy reuses one dict per step and yields in reverse-lexicographic order
    if n == 0:
        return ((),)
    return tuple(
        tuple(part for part in sorted(blocks, reverse=True) for _ in range(blocks[part]))
        for blocks in sympy_partitions(n)
    )


def partitions_of(n: int) -> List[Partition]:
    """
    All partitions of n in reverse-lexicographic order.

    Args:
        n: Nonnegative integer

    Returns:
        List of partitions; [()] for n = 0

    Raises:
        PartitionError: If n is negative
    """
    if n < 0:
        raise PartitionError(f"cannot partition a negative integer: {n}")
    return [Partition(parts) for parts in _partitions(n)]


def partitions_bounded(
    n: int,
    max_length: Optional[int] = None,
    max_part: Optional[int] = None,
) -> List[Partition]:
    """Partitions of n with at most max_length parts, each at most max_part."""
    result = []
    for p in partitions_of(n):
        if max_length is not None and p.length > max_length:
            continue
        if max_part is not None and p.parts and p.parts[0] > max_part:
            continue
        result.append(p)
    return result


def partitions_up_to(
    n_max: int,
    max_length: Optional[int] = None,
    max_part: Optional[int] = None,
    include_empty: bool = False,
) -> List[Partition]:
    """Bounded partitions of every size 0 (optional) or 1 up to n_max."""
    start = 0 if include_empty else 1
    result: List[Partition] = []
    for n in range(start, n_max + 1):
        result.extend(partitions_bounded(n, max_length, max_part))
    return result


def double_factorial_odd(k: int) -> int:
    """
    Odd double factorial k!! = k·(k−2)⋯1 with (−1)!! = 1.

    Raises:
        PartitionError: If k is even or k < −1
    """
    if k < -1 or k % 2 == 0:
        raise PartitionError(f"double_factorial_odd needs odd k >= -1, got {k}")
    result = 1
    while k > 1:
        result *= k
        k -= 2
    return result


def r_single(g: int, alpha: Partition) -> int:
    """r^g_α = d + l(α) + 2g − 2."""
    return alpha.size + alpha.length + 2 * g - 2


def r_double(g: int, alpha: Partition, beta: Partition) -> int:
    """
    r^g_{α,β} = l(α) + l(β) + 2g − 2.

    Raises:
        PartitionError: If |α| ≠ |β|
    """
    if alpha.size != beta.size:
        raise PartitionError(f"size mismatch: |{alpha}| != |{beta}|")
    return alpha.length + beta.length + 2 * g - 2


def r_fab(g: int, alpha: Partition) -> int:
    """r^Fab_{g,α} = d + l(α) − 1."""
    return alpha.size + alpha.length - 1


def branch_counts(g: int, alpha: Partition, beta: Optional[Partition] = None) -> BranchCounts:
    """
    Compute (r^g_α, r^g_{α,β}, r^Fab_{g,α}).

    Args:
        g: Genus, g ≥ 0
        alpha: Ramification over one point
        beta: Optional ramification over a second point, |β| = |α|

    Returns:
        BranchCounts with r_double None when beta is absent

    Raises:
        PartitionError: On negative genus or |α| ≠ |β|
    """
    if g < 0:
        raise PartitionError(f"genus must be nonnegative, got {g}")
    double = r_double(g, alpha, beta) if beta is not None else None
    return BranchCounts(r_single(g, alpha), double, r_fab(g, alpha))


def distinct_orderings(parts: Iterable[int]) -> List[Tuple[int, ...]]:
    """All distinct orderings of a multiset of parts, in lexicographic order."""
    return sorted(set(permutations(tuple(parts))))
