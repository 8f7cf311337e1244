"""
Faber–Hurwitz numbers by the join-cut recursion.

F^g_α is the rational multiple of the generator class 𝔾_{g,1} carried by the
Faber–Hurwitz class of (g, α). Degenerating the first of the r^Fab_{g,α}
fixed branch points gives three kinds of terms:

- cut: a part α_k = i + j splits; the i side joins a subset S of the other
  parts in a genus-0 cover, the j side keeps the rest R with the Faber
  condition; the fixed branch points are distributed by a binomial
- join: two parts α_a, α_b merge
- the point lands on the ψ-condition: Σ α_i^{2g+1}·H⁰_α

Conventions (checked by the join-cut equation residual): the cut runs over
ordered (i, j) with i, j ≥ 1 and over every subset S of the remaining part
positions; the join runs over unordered position pairs.

Example:
    >>> from faberhurwitz.core.partitions import Partition
    >>> from faberhurwitz.degeneration.joincut import faber_hurwitz
    >>> faber_hurwitz(1, Partition.of(3)) == 39
    True
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from faberhurwitz.core.errors import PartitionError
from faberhurwitz.core.partitions import Partition, r_fab
from faberhurwitz.core.rational import ZERO, ExactRational, binomial, rational
from faberhurwitz.hurwitz.closed import single_closed

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FHKey:
    """Index (g, α) of a Faber–Hurwitz number, g ≥ 1."""
    genus: int
    alpha: Partition

    def __post_init__(self):
        if self.genus < 1:
            raise PartitionError(f"Faber–Hurwitz numbers need genus >= 1, got {self.genus}")
        if self.alpha.is_empty():
            raise PartitionError("Faber–Hurwitz numbers need a nonempty partition")

    @property
    def r_fab(self) -> int:
        return r_fab(self.genus, self.alpha)


def faber_hurwitz(g: int, alpha: Partition) -> ExactRational:
    """
    F^g_α by the join-cut recursion.

    Raises:
        PartitionError: If g < 1 or α is empty
    """
    key = FHKey(g, alpha)
    return _faber_hurwitz(key.genus, key.alpha)


@lru_cache(maxsize=None)
def _faber_hurwitz(g: int, alpha: Partition) -> ExactRational:
    r = r_fab(g, alpha)
    if r == 0:
        return ZERO
    parts = alpha.parts
    total = ZERO
    for k, part in enumerate(parts):
        others = parts[:k] + parts[k + 1:]
        positions = range(len(others))
        for i in range(1, part):
            j = part - i
            for size in range(len(others) + 1):
                for chosen in combinations(positions, size):
                    hurwitz_side = Partition(tuple(others[p] for p in chosen) + (i,))
                    faber_side = Partition(tuple(others[p] for p in positions if p not in chosen) + (j,))
                    weight = binomial(r - 1, r_fab(g, faber_side))
                    if not weight:
                        continue
                    total += i * j * weight * single_closed(hurwitz_side) * _faber_hurwitz(g, faber_side)
    for a, b in combinations(range(len(parts)), 2):
        total += (parts[a] + parts[b]) * _faber_hurwitz(g, alpha.merge(parts[a], parts[b]))
    total += sum(part ** (2 * g + 1) for part in parts) * single_closed(alpha)
    return total


def one_part_closed(g: int, d: int) -> ExactRational:
    """
    F^g_(d) = (1/d)·Σ_{i=1}^d C(d, i)·i^{2g+i−1}·(d − i)^{d−i}, with 0⁰ = 1.

    Raises:
        PartitionError: If g < 1 or d < 1
    """
    if g < 1 or d < 1:
        raise PartitionError(f"one_part_closed needs g, d >= 1, got g={g}, d={d}")
    total = sum(binomial(d, i) * i ** (2 * g + i - 1) * (d - i) ** (d - i) for i in range(1, d + 1))
    return rational(total, d)
